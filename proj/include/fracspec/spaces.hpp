#pragma once

// Functions represented by coefficients in an orthonormal shifted-Jacobi basis,
// and the norms used to measure them.

#include <functional>
#include <span>
#include <vector>

#include "fracspec/fracparams.hpp"
#include "fracspec/jacobi.hpp"

namespace fracspec {

/// v(x) = sum_j coeffs[j] Ĝ_j^{(a,b)}(x)
struct CoeffVec {
    JacobiParams params;
    std::vector<double> coeffs;

    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    double value(double x) const;
};

/// Trial-side weight omega = omega^{(alpha-beta, beta)} and test-side weight
/// omega* = omega^{(beta, alpha-beta)}.  Both vanish at 0 and 1.
struct WeightSpec {
    JacobiParams trial;
    JacobiParams test;

    static WeightSpec from(const FracParams& fp);

    double omega(double x) const { return trial.weight(x); }
    double omega_star(double x) const { return test.weight(x); }
};

/// Weighted L2 projection onto degree <= N: coefficient j is (f, Ĝ_j)_{omega^{(a,b)}}.
/// Breakpoints of a piecewise f switch to the composite rule.
CoeffVec project(const std::function<double(double)>& f, const JacobiParams& p, int N, int quad_points,
                 std::span<const double> breaks = {});

/// sqrt(sum_j (1 + j^2)^s v_j^2)
double sobolev_norm(std::span<const double> coeffs, double s);
inline double sobolev_norm(const CoeffVec& v, double s) { return sobolev_norm(v.coeffs, s); }

/// u(x) = omega(x) phi(x); exactly zero at the endpoints.
double eval_solution(const CoeffVec& phi, const WeightSpec& w, double x);

/// sobolev_norm(reference - approx, mu) for each mu, the shorter vector zero-padded.
/// mu = 0 gives ||u - u_N||_{L2, 1/omega}; mu = 1 is the reported energy-norm figure.
std::vector<double> error_norms(const CoeffVec& reference, const CoeffVec& approx, std::span<const double> mus);

}  // namespace fracspec
