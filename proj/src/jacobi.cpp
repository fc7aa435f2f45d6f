#include "fracspec/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fracspec/errors.hpp"
#include "fracspec/specfun.hpp"

namespace fracspec {

JacobiParams::JacobiParams(double a, double b) : a_(a), b_(b) {
    if (!(a > -1.0) || !(b > -1.0) || !std::isfinite(a) || !std::isfinite(b)) {
        std::ostringstream os;
        os << "Jacobi exponents must exceed -1, got (" << a << ", " << b << ")";
        throw DomainError(os.str());
    }
}

double JacobiParams::weight(double x) const {
    return std::pow(1.0 - x, a_) * std::pow(x, b_);
}

double QuadratureRule::integrate(const std::function<double(double)>& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * g(nodes[i]);
    return sum;
}

namespace jacobi {

namespace {

// P_0 .. P_n of P^{(a,b)} at t in [-1,1].
void recurrence(double a, double b, int n, double t, std::span<double> out) {
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = 0.5 * ((a + b + 2.0) * t + a - b);
    const double ab = a + b;
    const double a2b2 = a * a - b * b;
    for (int m = 2; m <= n; ++m) {
        const double c = 2.0 * m + ab;
        const double denom = 2.0 * m * (m + ab) * (c - 2.0);
        const double lead = (c - 1.0) * (c * (c - 2.0) * t + a2b2);
        const double back = 2.0 * (m + a - 1.0) * (m + b - 1.0) * c;
        out[m] = (lead * out[m - 1] - back * out[m - 2]) / denom;
    }
}

double p_at(double a, double b, int n, double t) {
    if (n < 0) return 0.0;
    if (n == 0) return 1.0;
    double pm2 = 1.0;
    double pm1 = 0.5 * ((a + b + 2.0) * t + a - b);
    const double ab = a + b;
    const double a2b2 = a * a - b * b;
    for (int m = 2; m <= n; ++m) {
        const double c = 2.0 * m + ab;
        const double denom = 2.0 * m * (m + ab) * (c - 2.0);
        const double p = ((c - 1.0) * (c * (c - 2.0) * t + a2b2) * pm1 -
                          2.0 * (m + a - 1.0) * (m + b - 1.0) * c * pm2) /
                         denom;
        pm2 = pm1;
        pm1 = p;
    }
    return pm1;
}

// Gamma(z + k) / Gamma(z) as a finite product; z may be any real for which the
// factors are defined.
double rising(double z, int k) {
    double r = 1.0;
    for (int m = 0; m < k; ++m) r *= z + m;
    return r;
}

// Central difference of order k with step h.
double central_difference(const std::function<double(double)>& f, double x, int k, double h) {
    double sum = 0.0;
    double binom = 1.0;
    for (int m = 0; m <= k; ++m) {
        const double shift = (0.5 * k - m) * h;
        sum += ((m % 2 == 0) ? 1.0 : -1.0) * binom * f(x + shift);
        binom = binom * (k - m) / (m + 1);
    }
    return sum / std::pow(h, k);
}

}  // namespace

double eval_G(const JacobiParams& p, int n, double x) {
    if (n < 0) throw DomainError("eval_G: negative degree");
    return p_at(p.a(), p.b(), n, 2.0 * x - 1.0);
}

std::vector<double> eval_G_all(const JacobiParams& p, int n, double x) {
    if (n < 0) throw DomainError("eval_G_all: negative degree");
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    recurrence(p.a(), p.b(), n, 2.0 * x - 1.0, out);
    return out;
}

std::vector<double> eval_Ghat_all(const JacobiParams& p, int n, double x) {
    auto out = eval_G_all(p, n, x);
    for (int j = 0; j <= n; ++j) out[static_cast<std::size_t>(j)] /= norm_G(p, j);
    return out;
}

double norm_G(const JacobiParams& p, int j) {
    if (j < 0) throw DomainError("norm_G: negative degree");
    const double a = p.a();
    const double b = p.b();
    using specfun::log_gamma;
    if (j == 0) {
        // (2j + a + b + 1) Gamma(j + a + b + 1) collapses to Gamma(a + b + 2); this
        // also covers a + b + 1 <= 0 where the general formula is 0 * inf.
        return std::exp(0.5 * (log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0)));
    }
    const double log_sq = log_gamma(j + a + 1.0) + log_gamma(j + b + 1.0) - log_gamma(j + 1.0) -
                          log_gamma(j + a + b + 1.0) - std::log(2.0 * j + a + b + 1.0);
    return std::exp(0.5 * log_sq);
}

double norm_ratio_sq(double alpha, double beta, int j) {
    const double num = norm_G(JacobiParams(alpha - beta, beta), j);
    const double den = norm_G(JacobiParams(beta - 1.0, alpha - beta - 1.0), j + 1);
    return (num * num) / (den * den);
}

double deriv_G(const JacobiParams& p, int n, int k, double x) {
    if (n < 0 || k < 0) throw DomainError("deriv_G: negative degree or order");
    if (k > n) return 0.0;
    if (k == 0) return eval_G(p, n, x);
    const double scale = rising(n + p.a() + p.b() + 1.0, k);
    return scale * eval_G(JacobiParams(p.a() + k, p.b() + k), n - k, x);
}

double weighted_deriv_identity_check(const JacobiParams& p, int n, int k, double x) {
    if (k < 0 || k > n) throw DomainError("weighted_deriv_identity_check: need 0 <= k <= n");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("weighted_deriv_identity_check: x must be interior");
    const JacobiParams shifted(p.a() + k, p.b() + k);
    const double rhs = ((k % 2 == 0) ? 1.0 : -1.0) * rising(n - k + 1.0, k) * p.weight(x) *
                       eval_G(p, n, x);
    const auto lhs_fn = [&](double s) { return shifted.weight(s) * eval_G(shifted, n - k, s); };
    if (k == 0) return std::abs(lhs_fn(x) - rhs) / std::max(1.0, std::abs(rhs));

    // The weight is singular at the endpoints, so the stencil must stay well inside.
    const double h = std::min(k == 1 ? 1e-3 : 1e-2, 0.1 * std::min(x, 1.0 - x) / k);
    // Two Richardson levels remove the h^2 and h^4 error terms.
    const double d1 = central_difference(lhs_fn, x, k, h);
    const double d2 = central_difference(lhs_fn, x, k, 0.5 * h);
    const double d4 = central_difference(lhs_fn, x, k, 0.25 * h);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    const double lhs = (16.0 * r2 - r1) / 15.0;
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

QuadratureRule gauss_jacobi(const JacobiParams& p, int n) {
    if (n < 1) throw DomainError("gauss_jacobi: need at least one point");
    const double a = p.a();
    const double b = p.b();
    constexpr int max_iter = 100;
    constexpr double tol = 1e-14;

    // Roots in t = 2x - 1, found in increasing order.  Chebyshev-Gauss points seed
    // Newton; deflation by the roots already found keeps iterates from collapsing
    // onto a known root.
    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = -std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n));
        if (i > 0) t = 0.5 * (t + roots.back());
        bool converged = false;
        for (int it = 0; it < max_iter; ++it) {
            const double f = p_at(a, b, n, t);
            const double df = 0.5 * (n + a + b + 1.0) * p_at(a + 1.0, b + 1.0, n - 1, t);
            double defl = 0.0;
            for (double r : roots) defl += 1.0 / (t - r);
            const double delta = f / (df - f * defl);
            t -= delta;
            if (converged) break;  // one polishing step after the tolerance is met
            if (std::abs(delta) <= tol) converged = true;
        }
        if (!converged || !(t > -1.0 && t < 1.0)) {
            std::ostringstream os;
            os << "gauss_jacobi: root " << i << " of G_" << n << "^(" << a << "," << b
               << ") did not converge in " << max_iter << " iterations";
            throw ConvergenceError(os.str());
        }
        roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end());

    using specfun::log_gamma;
    // Weight formula on [-1,1] divided by 2^{a+b+1} for the map to (0,1).
    const double log_c = log_gamma(n + a + 1.0) + log_gamma(n + b + 1.0) - log_gamma(n + a + b + 1.0) -
                         log_gamma(n + 1.0);
    const double c = std::exp(log_c);

    QuadratureRule rule{p, {}, {}};
    rule.nodes.reserve(roots.size());
    rule.weights.reserve(roots.size());
    for (double t : roots) {
        const double dp = 0.5 * (n + a + b + 1.0) * p_at(a + 1.0, b + 1.0, n - 1, t);
        const double w = c / ((1.0 - t) * (1.0 + t) * dp * dp);
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ConvergenceError("gauss_jacobi: non-positive weight, rule rejected");
        }
        rule.nodes.push_back(0.5 * (1.0 + t));
        rule.weights.push_back(w);
    }
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
        if (!(rule.nodes[i] > rule.nodes[i - 1])) {
            throw ConvergenceError("gauss_jacobi: nodes not strictly increasing (duplicate root)");
        }
    }
    return rule;
}

}  // namespace jacobi
}  // namespace fracspec
