#pragma once

// Petrov-Galerkin discretization of
//     L u + b Du + c u = f  on (0,1),  u(0) = u(1) = 0,
// with L the acute or grave two-sided fractional diffusion operator.
//
// Trial functions are omega Ĝ_i^{(alpha-beta,beta)} and test functions are
// Ĝ_j^{(beta,alpha-beta)}, tested against omega*.  Each bilinear form collapses to a
// single Jacobi-weighted integral:
//
//   B0 (acute)  weight (alpha-beta-1, beta-1):  k (i+1) nr_i Ĝ_{i+1} (-mu_j) nr_j Ĝ_{j+1}
//   B0 (grave)  weight (beta-1, alpha-beta-1):  k (-mu_i) nr_i Ĝ_{i+1} (j+1) nr_j Ĝ_{j+1}
//   B1          weight (alpha-1, alpha-1):      b Ĝ_j^{test} (-(i+1) nr_i) Ĝ_{i+1}^{(alpha-beta-1,beta-1)}
//   B2          weight (alpha, alpha):          c Ĝ_i^{trial} Ĝ_j^{test}
//   F           weight (beta, alpha-beta):      f Ĝ_j^{test}
//
// where nr_m = |||G_{m+1}||| / |||G_m^{trial}|||.  Matrices are indexed (test j, trial i).

#include <vector>

#include "fracspec/coeffexpr.hpp"
#include "fracspec/fracparams.hpp"
#include "fracspec/linsolve.hpp"

namespace fracspec {

struct ProblemSpec {
    FracParams fp;
    Variant variant;
    Expr k;
    Expr b;
    Expr c;
    Expr f;
    int N;
    int quad_points = 0;  // 0 selects N + 20
    int N_ref = 40;

    int effective_quad_points() const noexcept { return quad_points > 0 ? quad_points : N + 20; }

    /// Copy with a different trial degree; the quadrature count is raised if needed.
    ProblemSpec with_degree(int n) const;

    /// Throws ConfigError for N < 1 or quad_points < N + 20.
    void validate() const;
};

struct DiscreteSystem {
    DenseMatrix matrix;       // B0 + B1 + B2
    std::vector<double> rhs;  // F
    double k_min;             // smallest diffusivity sample on the B0 quadrature grid
};

/// Throws CoefficientError if k is not positive at some quadrature node.
DenseMatrix assemble_B0(const ProblemSpec& spec);
DenseMatrix assemble_B1(const ProblemSpec& spec);
DenseMatrix assemble_B2(const ProblemSpec& spec);
std::vector<double> assemble_rhs(const ProblemSpec& spec);

DiscreteSystem assemble(const ProblemSpec& spec);

}  // namespace fracspec
