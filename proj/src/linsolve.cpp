#include "fracspec/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracspec/errors.hpp"

namespace fracspec {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    if (other.n_ != n_) throw DomainError("DenseMatrix: order mismatch in +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    if (x.size() != n_) throw DomainError("DenseMatrix: dimension mismatch in multiply");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

double DenseMatrix::norm_1() const {
    double m = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.order()) {
    const std::size_t n = lu_.order();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    norm1_ = lu_.norm_1();
    const double scale = lu_.max_abs();
    const double threshold = 1e-14 * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
        }
        if (!(std::abs(lu_(p, k)) > threshold)) {
            std::ostringstream os;
            os << "matrix is singular to working precision: pivot " << k << " is " << lu_(p, k)
               << " (threshold " << threshold << ")";
            throw SingularMatrixError(k, os.str());
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        const double pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) / pivot;
            lu_(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
        }
    }

    double umax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) umax = std::max(umax, std::abs(lu_(i, j)));
    }
    rpg_ = umax > 0.0 ? scale / umax : 1.0;
}

std::vector<double> LuFactorization::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.order();
    if (rhs.size() != n) throw DomainError("lu solve: rhs length does not match matrix order");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
        y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
        y[i] = s / lu_(i, i);
    }
    return y;
}

std::vector<double> LuFactorization::solve_transposed(std::span<const double> rhs) const {
    // A^T = U^T L^T P, so solve U^T z = rhs, L^T w = z, then x = P^T w.
    const std::size_t n = lu_.order();
    if (rhs.size() != n) throw DomainError("lu solve: rhs length does not match matrix order");
    std::vector<double> z(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        double s = z[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * z[j];
        z[i] = s / lu_(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = z[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * z[j];
        z[i] = s;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = z[i];
    return x;
}

DenseMatrix LuFactorization::lower() const {
    const std::size_t n = lu_.order();
    DenseMatrix l = DenseMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) l(i, j) = lu_(i, j);
    }
    return l;
}

DenseMatrix LuFactorization::upper() const {
    const std::size_t n = lu_.order();
    DenseMatrix u(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) u(i, j) = lu_(i, j);
    }
    return u;
}

double LuFactorization::condition_estimate_1() const {
    const std::size_t n = lu_.order();
    if (n == 0) return 0.0;
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        const auto y = solve(x);
        double y1 = 0.0;
        for (double v : y) y1 += std::abs(v);
        estimate = std::max(estimate, y1);
        std::vector<double> sgn(n);
        for (std::size_t i = 0; i < n; ++i) sgn[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        const auto z = solve_transposed(sgn);
        std::size_t j = 0;
        double ztx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ztx += z[i] * x[i];
            if (std::abs(z[i]) > std::abs(z[j])) j = i;
        }
        if (std::abs(z[j]) <= ztx) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[j] = 1.0;
    }
    return estimate * norm1_;
}

LuSolveResult lu_solve(const DenseMatrix& a, std::span<const double> rhs) {
    if (rhs.size() != a.order()) throw DomainError("lu_solve: rhs length does not match matrix order");
    LuFactorization lu(a);
    return {lu.solve(rhs), lu.reciprocal_pivot_growth()};
}

}  // namespace fracspec
