#pragma once

// Parameters of the two-sided fractional diffusion operator and the spectral
// relations it satisfies on weighted Jacobi modes.
//
// For order alpha in (1,2) and left/right weighting r in [0,1], the exponent beta in
// [alpha-1, 1] solves
//     r = sin(pi beta) / (sin(pi (alpha - beta)) + sin(pi beta)),
// and c** = sin(pi alpha) / (sin(pi (alpha - beta)) + sin(pi beta)) < 0 scales the
// eigen-coefficients mu_k.

#include <limits>

namespace fracspec {

enum class Variant {
    acute,  // diffusivity inside the fractional integral: -D (R k D u)
    grave,  // diffusivity outside: -D (k R D u)
};

const char* to_string(Variant v) noexcept;

class FracParams {
public:
    /// Solve for beta by bisection on the monotone map beta -> r.
    static FracParams solve_beta(double alpha, double r);

    /// Build from (alpha, beta) directly; r is computed.  beta must lie in the window.
    static FracParams from_beta(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double r() const noexcept { return r_; }
    double beta() const noexcept { return beta_; }
    double c_star_star() const noexcept { return css_; }

    /// mu_k = c** Gamma(k + alpha) / Gamma(k + 1)  (negative)
    double mu(int k) const;

    /// sigma_k = -c** Gamma(k + alpha - 1) / Gamma(k + 1)  (positive)
    double sigma(int k) const;

private:
    FracParams(double alpha, double r, double beta);

    double alpha_;
    double r_;
    double beta_;
    double css_;
};

/// r as a function of beta for fixed alpha.
double r_of_beta(double alpha, double beta);

/// c** for (alpha, beta).
double c_star_star(double alpha, double beta);

struct RatePrediction {
    double s_tilde;
    double rate_l2;      // exponent of the weighted L2 error
    double rate_energy;  // H^1 (acute) or H^{alpha-1} (grave) exponent
};

inline constexpr double smooth_data = std::numeric_limits<double>::infinity();

/// Convergence exponents from the regularity ceiling
///   s~ = min{s_f, alpha + (alpha - beta) +/- 1, alpha + beta +/- 1}
/// (+1 when b == 0, -1 otherwise), with epsilon taken as 0.
RatePrediction predicted_rates(const FracParams& fp, bool b_is_zero, double s_f, Variant variant);

}  // namespace fracspec
