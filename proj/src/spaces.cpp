#include "fracspec/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/composite_rule.hpp"
#include "fracspec/errors.hpp"

namespace fracspec {

double CoeffVec::value(double x) const {
    if (coeffs.empty()) return 0.0;
    const auto basis = jacobi::eval_Ghat_all(params, degree(), x);
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * basis[j];
    return s;
}

WeightSpec WeightSpec::from(const FracParams& fp) {
    const double a = fp.alpha();
    const double b = fp.beta();
    return {JacobiParams(a - b, b), JacobiParams(b, a - b)};
}

CoeffVec project(const std::function<double(double)>& f, const JacobiParams& p, int N, int quad_points,
                 std::span<const double> breaks) {
    if (N < 0) throw DomainError("project: negative degree");
    if (quad_points < N + 1) throw DomainError("project: need at least N + 1 quadrature points");
    const auto rule = composite_rule(p, quad_points, breaks);
    CoeffVec out{p, std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0)};
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double fx = f(rule.nodes[q]) * rule.weights[q];
        const auto basis = jacobi::eval_Ghat_all(p, N, rule.nodes[q]);
        for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] += fx * basis[j];
    }
    return out;
}

double sobolev_norm(std::span<const double> coeffs, double s) {
    double sum = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double jj = static_cast<double>(j);
        sum += std::pow(1.0 + jj * jj, s) * coeffs[j] * coeffs[j];
    }
    return std::sqrt(sum);
}

double eval_solution(const CoeffVec& phi, const WeightSpec& w, double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return w.omega(x) * phi.value(x);
}

std::vector<double> error_norms(const CoeffVec& reference, const CoeffVec& approx, std::span<const double> mus) {
    if (!(reference.params == approx.params)) throw DomainError("error_norms: basis mismatch");
    std::vector<double> diff(std::max(reference.coeffs.size(), approx.coeffs.size()), 0.0);
    for (std::size_t j = 0; j < reference.coeffs.size(); ++j) diff[j] += reference.coeffs[j];
    for (std::size_t j = 0; j < approx.coeffs.size(); ++j) diff[j] -= approx.coeffs[j];
    std::vector<double> out;
    out.reserve(mus.size());
    for (double mu : mus) out.push_back(sobolev_norm(diff, mu));
    return out;
}

}  // namespace fracspec
