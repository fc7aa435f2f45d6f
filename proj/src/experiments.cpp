#include "fracspec/experiments.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "fracspec/errors.hpp"

namespace fracspec {

double observed_rate(double e1, double e2, int N1, int N2) {
    if (!(e1 > 0.0) || !(e2 > 0.0)) throw DomainError("observed_rate: errors must be positive");
    if (N1 <= 0 || N2 <= 0 || N1 == N2) throw DomainError("observed_rate: need distinct positive degrees");
    return std::log(e1 / e2) / std::log(static_cast<double>(N2) / static_cast<double>(N1));
}

ConvergenceReport run_convergence(const ProblemSpec& spec_base, const std::vector<int>& Ns, int N_ref) {
    if (Ns.empty()) throw ConfigError("convergence study needs at least one N");
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] < 1 || (i > 0 && Ns[i] <= Ns[i - 1])) throw ConfigError("Ns must be positive and strictly ascending");
    }
    if (Ns.back() >= N_ref) throw ConfigError("every N must be below N_ref");

    auto launch = [&](int n) {
        return std::async(std::launch::async, [spec = spec_base.with_degree(n)] { return solve(spec); });
    };
    auto ref_future = launch(N_ref);
    std::vector<std::future<Solution>> futures;
    futures.reserve(Ns.size());
    for (int n : Ns) futures.push_back(launch(n));

    const auto collect = [](std::future<Solution>& f, int n) {
        const auto at = [n](const std::exception& e) {
            std::ostringstream os;
            os << "solve failed at N = " << n << ": " << e.what();
            return os.str();
        };
        try {
            return f.get();
        } catch (const SingularMatrixError& e) {
            throw SingularMatrixError(e.pivot(), at(e));
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(at(e));
        } catch (const CoefficientError& e) {
            throw CoefficientError(at(e));
        } catch (const EvalError& e) {
            throw EvalError(at(e));
        }
    };

    const Solution reference = collect(ref_future, N_ref);
    ConvergenceReport report{spec_base, Ns, N_ref, {}, {}};
    const bool b_zero = spec_base.b.is_constant() && spec_base.b.eval(0.5) == 0.0;
    report.predicted = predicted_rates(spec_base.fp, b_zero, smooth_data, spec_base.variant);

    const double mus[] = {0.0, 1.0};
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        const Solution s = collect(futures[i], Ns[i]);
        const auto errs = error_norms(reference.phi, s.phi, mus);
        ConvergenceRow row{Ns[i], errs[0], std::nullopt, errs[1], std::nullopt};
        if (i > 0) {
            const auto& prev = report.rows.back();
            if (prev.err_l2 > 0.0 && row.err_l2 > 0.0) row.rate_l2 = observed_rate(prev.err_l2, row.err_l2, prev.N, row.N);
            if (prev.err_h1 > 0.0 && row.err_h1 > 0.0) row.rate_h1 = observed_rate(prev.err_h1, row.err_h1, prev.N, row.N);
        }
        report.rows.push_back(row);
    }
    return report;
}

ComparisonReport run_comparison(const ProblemSpec& spec_base, int grid_points) {
    if (grid_points < 2) throw ConfigError("grid_points must be at least 2");
    ProblemSpec acute_spec = spec_base;
    acute_spec.variant = Variant::acute;
    ProblemSpec grave_spec = spec_base;
    grave_spec.variant = Variant::grave;

    auto grave_future = std::async(std::launch::async, [&] { return solve(grave_spec); });
    Solution acute = solve(acute_spec);
    Solution grave = grave_future.get();

    std::vector<double> xs(static_cast<std::size_t>(grid_points));
    std::vector<double> ua(xs.size());
    std::vector<double> ug(xs.size());
    for (int i = 0; i < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        xs[i] = x;
        ua[i] = acute.u(x);
        ug[i] = grave.u(x);
    }
    return ComparisonReport{spec_base, std::move(xs), std::move(ua), std::move(ug), std::move(acute), std::move(grave)};
}

InterfaceQuotients interface_quotients(const Solution& s, double x0, double h) {
    const double mid = s.u(x0);
    return {(mid - s.u(x0 - h)) / h, (s.u(x0 + h) - mid) / h};
}

}  // namespace fracspec
