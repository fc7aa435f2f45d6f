#include "fracspec/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracspec/composite_rule.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/jacobi.hpp"
#include "fracspec/spaces.hpp"

namespace fracspec {

ProblemSpec ProblemSpec::with_degree(int n) const {
    ProblemSpec out = *this;
    out.N = n;
    if (quad_points > 0) out.quad_points = std::max(quad_points, n + 20);
    return out;
}

void ProblemSpec::validate() const {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (quad_points != 0 && quad_points < N + 20) {
        std::ostringstream os;
        os << "quad_points must be at least N + 20 = " << N + 20 << ", got " << quad_points;
        throw ConfigError(os.str());
    }
}

namespace {

// Samples of Ĝ_0 .. Ĝ_{n} at every node; row q holds the values at node q.
std::vector<std::vector<double>> basis_table(const JacobiParams& p, int n, const QuadratureRule& rule) {
    std::vector<std::vector<double>> table;
    table.reserve(rule.size());
    for (double x : rule.nodes) table.push_back(jacobi::eval_Ghat_all(p, n, x));
    return table;
}

std::vector<double> sample(const Expr& e, const QuadratureRule& rule) {
    std::vector<double> out;
    out.reserve(rule.size());
    for (double x : rule.nodes) out.push_back(e.eval(x));
    return out;
}

bool identically_zero(const Expr& e) { return e.is_constant() && e.eval(0.5) == 0.0; }

// |||G_{m+1}^{lowered}||| / |||G_m^{side}|||
double norm_ratio(const JacobiParams& lowered, const JacobiParams& side, int m) {
    return jacobi::norm_G(lowered, m + 1) / jacobi::norm_G(side, m);
}

DenseMatrix diffusion_block(const ProblemSpec& spec, double& k_min) {
    const FracParams& fp = spec.fp;
    const double alpha = fp.alpha();
    const double beta = fp.beta();
    const int n = spec.N;
    const auto w = WeightSpec::from(fp);
    const bool acute = spec.variant == Variant::acute;
    const JacobiParams lowered = acute ? JacobiParams(alpha - beta - 1.0, beta - 1.0)
                                       : JacobiParams(beta - 1.0, alpha - beta - 1.0);

    const auto breaks = spec.k.breakpoints();
    const auto rule = composite_rule(lowered, spec.effective_quad_points(), breaks);
    const auto k = sample(spec.k, rule);
    k_min = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < k.size(); ++q) {
        if (!(k[q] > 0.0)) {
            std::ostringstream os;
            os << "diffusivity k must be positive; k(" << rule.nodes[q] << ") = " << k[q];
            throw CoefficientError(os.str());
        }
        k_min = std::min(k_min, k[q]);
    }

    std::vector<double> trial_scale(n + 1);
    std::vector<double> test_scale(n + 1);
    for (int m = 0; m <= n; ++m) {
        const double nr_trial = norm_ratio(lowered, w.trial, m);
        const double nr_test = norm_ratio(lowered, w.test, m);
        if (acute) {
            trial_scale[m] = (m + 1.0) * nr_trial;
            test_scale[m] = -fp.mu(m) * nr_test;
        } else {
            trial_scale[m] = -fp.mu(m) * nr_trial;
            test_scale[m] = (m + 1.0) * nr_test;
        }
    }

    const auto basis = basis_table(lowered, n + 1, rule);
    DenseMatrix out(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            double s = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                s += rule.weights[q] * k[q] * basis[q][i + 1] * basis[q][j + 1];
            }
            out(j, i) = test_scale[j] * trial_scale[i] * s;
        }
    }
    return out;
}

}  // namespace

DenseMatrix assemble_B0(const ProblemSpec& spec) {
    spec.validate();
    double k_min = 0.0;
    return diffusion_block(spec, k_min);
}

DenseMatrix assemble_B1(const ProblemSpec& spec) {
    spec.validate();
    const int n = spec.N;
    DenseMatrix out(static_cast<std::size_t>(n) + 1);
    if (identically_zero(spec.b)) return out;

    const double alpha = spec.fp.alpha();
    const double beta = spec.fp.beta();
    const auto w = WeightSpec::from(spec.fp);
    const JacobiParams lowered(alpha - beta - 1.0, beta - 1.0);
    const auto breaks = spec.b.breakpoints();
    const auto rule = composite_rule(JacobiParams(alpha - 1.0, alpha - 1.0), spec.effective_quad_points(), breaks);
    const auto b = sample(spec.b, rule);
    const auto test = basis_table(w.test, n, rule);
    const auto deriv = basis_table(lowered, n + 1, rule);

    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            double s = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                s += rule.weights[q] * b[q] * test[q][j] * deriv[q][i + 1];
            }
            out(j, i) = -(i + 1.0) * norm_ratio(lowered, w.trial, i) * s;
        }
    }
    return out;
}

DenseMatrix assemble_B2(const ProblemSpec& spec) {
    spec.validate();
    const int n = spec.N;
    DenseMatrix out(static_cast<std::size_t>(n) + 1);
    if (identically_zero(spec.c)) return out;

    const double alpha = spec.fp.alpha();
    const auto w = WeightSpec::from(spec.fp);
    const auto breaks = spec.c.breakpoints();
    const auto rule = composite_rule(JacobiParams(alpha, alpha), spec.effective_quad_points(), breaks);
    const auto c = sample(spec.c, rule);
    const auto trial = basis_table(w.trial, n, rule);
    const auto test = basis_table(w.test, n, rule);

    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            double s = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) s += rule.weights[q] * c[q] * trial[q][i] * test[q][j];
            out(j, i) = s;
        }
    }
    return out;
}

std::vector<double> assemble_rhs(const ProblemSpec& spec) {
    spec.validate();
    const auto w = WeightSpec::from(spec.fp);
    const auto breaks = spec.f.breakpoints();
    const auto rule = composite_rule(w.test, spec.effective_quad_points(), breaks);
    const auto f = sample(spec.f, rule);
    const auto test = basis_table(w.test, spec.N, rule);
    std::vector<double> out(static_cast<std::size_t>(spec.N) + 1, 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += rule.weights[q] * f[q] * test[q][j];
    }
    return out;
}

DiscreteSystem assemble(const ProblemSpec& spec) {
    spec.validate();
    DiscreteSystem sys{DenseMatrix{}, {}, 0.0};
    sys.matrix = diffusion_block(spec, sys.k_min);
    sys.matrix += assemble_B1(spec);
    sys.matrix += assemble_B2(spec);
    sys.rhs = assemble_rhs(spec);
    return sys;
}

}  // namespace fracspec
