#pragma once

// Shifted Jacobi polynomials G_n^{(a,b)}(x) = P_n^{(a,b)}(2x - 1) on (0,1),
// orthogonal with respect to omega^{(a,b)}(x) = (1 - x)^a x^b.
//
// Derivatives are taken with respect to x (not the reference variable t = 2x - 1),
// so d/dx G_n^{(a,b)} = (n + a + b + 1) G_{n-1}^{(a+1,b+1)} with no power of 2.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracspec {

class JacobiParams {
public:
    /// a multiplies (1 - x), b multiplies x.  Both must exceed -1.
    JacobiParams(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// (1 - x)^a x^b
    double weight(double x) const;

    friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

private:
    double a_;
    double b_;
};

/// Nodes in (0,1), strictly increasing, with positive weights such that
/// sum_i weights[i] g(nodes[i]) approximates the integral of omega^{(a,b)} g over (0,1).
struct QuadratureRule {
    JacobiParams params;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    double integrate(const std::function<double(double)>& g) const;
};

namespace jacobi {

/// G_n^{(a,b)}(x) by the three-term recurrence.
double eval_G(const JacobiParams& p, int n, double x);

/// G_0 .. G_n at x in one recurrence sweep.
std::vector<double> eval_G_all(const JacobiParams& p, int n, double x);

/// Orthonormal Ĝ_0 .. Ĝ_n at x.
std::vector<double> eval_Ghat_all(const JacobiParams& p, int n, double x);

/// Weighted L2 norm of G_j^{(a,b)} on (0,1), evaluated in log space.
double norm_G(const JacobiParams& p, int j);

/// |||G_j^{(alpha-beta,beta)}|||^2 / |||G_{j+1}^{(beta-1,alpha-beta-1)}|||^2, which equals (j+1)/(j+alpha).
double norm_ratio_sq(double alpha, double beta, int j);

/// d^k/dx^k G_n^{(a,b)}(x).  Zero for k > n.
double deriv_G(const JacobiParams& p, int n, int k, double x);

/// Relative residual (unit floor on the scale) of
///   d^k/dx^k [omega^{(a+k,b+k)} G_{n-k}^{(a+k,b+k)}] = (-1)^k n!/(n-k)! omega^{(a,b)} G_n^{(a,b)}
/// with the left side taken by Richardson-extrapolated central differences.
/// Self-test of the sign and scale conventions; x must be interior.
double weighted_deriv_identity_check(const JacobiParams& p, int n, int k, double x);

/// n-point Gauss-Jacobi rule for omega^{(a,b)} on (0,1); exact through degree 2n - 1.
/// Newton iteration with deflation on the recurrence; throws ConvergenceError if a
/// root fails to converge within 100 iterations.
QuadratureRule gauss_jacobi(const JacobiParams& p, int n);

}  // namespace jacobi
}  // namespace fracspec
