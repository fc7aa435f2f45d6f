#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracspec {

/// Square, row-major dense matrix.  Systems here are at most a few dozen rows.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t order() const noexcept { return n_; }

    double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

    DenseMatrix& operator+=(const DenseMatrix& other);

    std::vector<double> multiply(std::span<const double> x) const;

    double max_abs() const;
    double norm_inf() const;
    double norm_1() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// PA = LU with partial (row) pivoting.
class LuFactorization {
public:
    /// Throws SingularMatrixError when a pivot falls below 1e-14 * max |A_ij|.
    explicit LuFactorization(DenseMatrix a);

    std::vector<double> solve(std::span<const double> rhs) const;
    std::vector<double> solve_transposed(std::span<const double> rhs) const;

    /// Unit lower-triangular factor.
    DenseMatrix lower() const;
    DenseMatrix upper() const;
    /// Row i of PA is row perm()[i] of A.
    const std::vector<std::size_t>& perm() const noexcept { return perm_; }

    /// max |A_ij| / max |U_ij|; 1 means no growth.
    double reciprocal_pivot_growth() const noexcept { return rpg_; }

    /// Hager/Higham estimate of ||A^{-1}||_1 times ||A||_1.
    double condition_estimate_1() const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    double norm1_ = 0.0;
    double rpg_ = 1.0;
};

struct LuSolveResult {
    std::vector<double> x;
    double reciprocal_pivot_growth;
};

LuSolveResult lu_solve(const DenseMatrix& a, std::span<const double> rhs);

}  // namespace fracspec
