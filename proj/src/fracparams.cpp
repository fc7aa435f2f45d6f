#include "fracspec/fracparams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracspec/errors.hpp"
#include "fracspec/specfun.hpp"

namespace fracspec {

const char* to_string(Variant v) noexcept {
    return v == Variant::acute ? "acute" : "grave";
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        std::ostringstream os;
        os << "alpha must lie in (1,2), got " << alpha;
        throw DomainError(os.str());
    }
}

}  // namespace

double r_of_beta(double alpha, double beta) {
    const double pi = std::numbers::pi;
    const double sb = std::sin(pi * beta);
    return sb / (std::sin(pi * (alpha - beta)) + sb);
}

double c_star_star(double alpha, double beta) {
    const double pi = std::numbers::pi;
    return std::sin(pi * alpha) / (std::sin(pi * (alpha - beta)) + std::sin(pi * beta));
}

FracParams::FracParams(double alpha, double r, double beta)
    : alpha_(alpha), r_(r), beta_(beta), css_(fracspec::c_star_star(alpha, beta)) {
    // Negative throughout the admissible window; a failure here means the window
    // checks above were bypassed.
    if (!(css_ < 0.0)) {
        std::ostringstream os;
        os << "c** must be negative, got " << css_ << " for alpha=" << alpha << ", beta=" << beta;
        throw DomainError(os.str());
    }
}

FracParams FracParams::solve_beta(double alpha, double r) {
    check_alpha(alpha);
    if (!(r >= 0.0 && r <= 1.0)) {
        std::ostringstream os;
        os << "r must lie in [0,1], got " << r;
        throw DomainError(os.str());
    }
    double lo = alpha - 1.0;  // r = 1
    double hi = 1.0;          // r = 0
    if (r == 1.0) return FracParams(alpha, r, lo);
    if (r == 0.0) return FracParams(alpha, r, hi);
    // r_of_beta is strictly decreasing on [alpha-1, 1].
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (r_of_beta(alpha, mid) > r) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return FracParams(alpha, r, 0.5 * (lo + hi));
}

FracParams FracParams::from_beta(double alpha, double beta) {
    check_alpha(alpha);
    if (!(beta >= alpha - 1.0 && beta <= 1.0)) {
        std::ostringstream os;
        os << "beta must lie in [alpha-1, 1], got " << beta;
        throw DomainError(os.str());
    }
    return FracParams(alpha, r_of_beta(alpha, beta), beta);
}

double FracParams::mu(int k) const {
    if (k < 0) throw DomainError("mu: negative index");
    return css_ * specfun::gamma_ratio(k + 1.0, alpha_ - 1.0);
}

double FracParams::sigma(int k) const {
    if (k < 0) throw DomainError("sigma: negative index");
    return -css_ * specfun::gamma_ratio(k + 1.0, alpha_ - 2.0);
}

RatePrediction predicted_rates(const FracParams& fp, bool b_is_zero, double s_f, Variant variant) {
    const double alpha = fp.alpha();
    const double beta = fp.beta();
    const double shift = b_is_zero ? 1.0 : -1.0;
    const double s_tilde = std::min({s_f, alpha + (alpha - beta) + shift, alpha + beta + shift});
    const double energy = variant == Variant::acute ? s_tilde + alpha - 1.0 : s_tilde + 1.0;
    return {s_tilde, s_tilde + alpha, energy};
}

}  // namespace fracspec
