#pragma once

#include <span>

#include "fracspec/jacobi.hpp"

namespace fracspec {

/// Quadrature for omega^{(a,b)} on (0,1) split at the given breakpoints, n points per
/// piece.  The piece touching 0 uses a Gauss-Jacobi rule for x^b alone with the smooth
/// (1-x)^a folded into the weights; the piece touching 1 is the mirror image; interior
/// pieces are Gauss-Legendre with the whole weight folded in.  With no breakpoints this
/// is gauss_jacobi(p, n).  Breakpoints must be sorted, distinct and inside (0,1).
QuadratureRule composite_rule(const JacobiParams& p, int n, std::span<const double> breaks);

}  // namespace fracspec
