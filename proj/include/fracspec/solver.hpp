#pragma once

#include "fracspec/assembly.hpp"
#include "fracspec/spaces.hpp"

namespace fracspec {

struct SolveDiagnostics {
    double k_min;
    double condition_estimate;       // 1-norm estimate from the LU factors
    double residual;                 // ||B phi - F||_inf / (||B||_inf ||phi||_inf + ||F||_inf)
    double reciprocal_pivot_growth;
    double rhs0;                     // F_0, the load against the constant test mode
};

struct Solution {
    ProblemSpec spec;
    CoeffVec phi;  // trial basis (alpha-beta, beta)
    SolveDiagnostics diagnostics;

    /// u_N(x) = omega(x) phi_N(x)
    double u(double x) const;
};

/// Assemble and solve B phi = F.  Propagates CoefficientError, EvalError and
/// SingularMatrixError.
Solution solve(const ProblemSpec& spec);

}  // namespace fracspec
