#include "fracspec/solver.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/linsolve.hpp"

namespace fracspec {

double Solution::u(double x) const {
    return eval_solution(phi, WeightSpec::from(spec.fp), x);
}

Solution solve(const ProblemSpec& spec) {
    const auto sys = assemble(spec);
    const LuFactorization lu(sys.matrix);
    auto x = lu.solve(sys.rhs);

    const auto bx = sys.matrix.multiply(x);
    double res = 0.0;
    double xmax = 0.0;
    double fmax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        res = std::max(res, std::abs(bx[i] - sys.rhs[i]));
        xmax = std::max(xmax, std::abs(x[i]));
        fmax = std::max(fmax, std::abs(sys.rhs[i]));
    }
    const double scale = sys.matrix.norm_inf() * xmax + fmax;

    SolveDiagnostics diag{sys.k_min, lu.condition_estimate_1(), scale > 0.0 ? res / scale : 0.0,
                          lu.reciprocal_pivot_growth(), sys.rhs.front()};
    return Solution{spec, CoeffVec{WeightSpec::from(spec.fp).trial, std::move(x)}, diag};
}

}  // namespace fracspec
