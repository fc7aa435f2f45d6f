#include "fracspec/composite_rule.hpp"

#include <cmath>

#include "fracspec/errors.hpp"

namespace fracspec {

QuadratureRule composite_rule(const JacobiParams& p, int n, std::span<const double> breaks) {
    if (breaks.empty()) return jacobi::gauss_jacobi(p, n);
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        if (!(breaks[i] > 0.0 && breaks[i] < 1.0) || (i > 0 && !(breaks[i] > breaks[i - 1]))) {
            throw DomainError("composite_rule: breakpoints must be sorted, distinct and inside (0,1)");
        }
    }
    const double a = p.a();
    const double b = p.b();
    QuadratureRule out{p, {}, {}};

    // [0, x1]: x = x1 s,  x^b dx = x1^{b+1} s^b ds
    {
        const double x1 = breaks.front();
        const auto left = jacobi::gauss_jacobi(JacobiParams(0.0, b), n);
        const double scale = std::pow(x1, b + 1.0);
        for (std::size_t q = 0; q < left.size(); ++q) {
            const double x = x1 * left.nodes[q];
            out.nodes.push_back(x);
            out.weights.push_back(scale * left.weights[q] * std::pow(1.0 - x, a));
        }
    }
    if (breaks.size() > 1) {
        const auto legendre = jacobi::gauss_jacobi(JacobiParams(0.0, 0.0), n);
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            const double lo = breaks[k];
            const double h = breaks[k + 1] - lo;
            for (std::size_t q = 0; q < legendre.size(); ++q) {
                const double x = lo + h * legendre.nodes[q];
                out.nodes.push_back(x);
                out.weights.push_back(h * legendre.weights[q] * p.weight(x));
            }
        }
    }
    // [xm, 1]: x = xm + (1 - xm) s,  (1-x)^a dx = (1-xm)^{a+1} (1-s)^a ds
    {
        const double xm = breaks.back();
        const double h = 1.0 - xm;
        const auto right = jacobi::gauss_jacobi(JacobiParams(a, 0.0), n);
        const double scale = std::pow(h, a + 1.0);
        for (std::size_t q = 0; q < right.size(); ++q) {
            const double x = xm + h * right.nodes[q];
            out.nodes.push_back(x);
            out.weights.push_back(scale * right.weights[q] * std::pow(x, b));
        }
    }
    return out;
}

}  // namespace fracspec
