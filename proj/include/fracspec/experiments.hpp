#pragma once

// Convergence studies against a high-degree reference solution, and side-by-side
// runs of the acute and grave operator variants.

#include <optional>
#include <vector>

#include "fracspec/solver.hpp"

namespace fracspec {

struct ConvergenceRow {
    int N;
    double err_l2;
    std::optional<double> rate_l2;
    double err_h1;
    std::optional<double> rate_h1;
};

struct ConvergenceReport {
    ProblemSpec config;
    std::vector<int> Ns;
    int N_ref;
    std::vector<ConvergenceRow> rows;
    RatePrediction predicted;
};

/// ln(e1/e2) / ln(N2/N1).  Throws DomainError for non-positive errors or N1 == N2.
double observed_rate(double e1, double e2, int N1, int N2);

/// Solves at N_ref once and at every N in Ns (ascending, all below N_ref); errors are
/// the coefficient-space norms with mu = 0 and mu = 1.  Independent solves run
/// concurrently.  A failing solve is rethrown with the offending N in the message.
ConvergenceReport run_convergence(const ProblemSpec& spec_base, const std::vector<int>& Ns, int N_ref);

struct ComparisonReport {
    ProblemSpec config;  // variant field is ignored
    std::vector<double> x;
    std::vector<double> u_acute;
    std::vector<double> u_grave;
    Solution acute;
    Solution grave;
};

/// Solve both variants with spec_base's data and sample them on grid_points uniform
/// points including both endpoints.
ComparisonReport run_comparison(const ProblemSpec& spec_base, int grid_points = 1001);

/// One-sided difference quotients of u across an interface point.
struct InterfaceQuotients {
    double left;
    double right;
};

InterfaceQuotients interface_quotients(const Solution& s, double x0, double h = 1e-3);

}  // namespace fracspec
