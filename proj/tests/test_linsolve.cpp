#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/linsolve.hpp"

using namespace fracspec;

namespace {

DenseMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
    // diagonal shift keeps the condition number moderate
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.5 * std::sqrt(static_cast<double>(n));
    return a;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace

TEST_CASE("identity and diagonal systems") {
    const std::vector<double> r{1.0, -2.0, 3.5};
    CHECK(lu_solve(DenseMatrix::identity(3), r).x == r);
    DenseMatrix d(3);
    d(0, 0) = 2.0;
    d(1, 1) = -4.0;
    d(2, 2) = 0.5;
    const auto x = lu_solve(d, r).x;
    CHECK(x[0] == 0.5);
    CHECK(x[1] == 0.5);
    CHECK(x[2] == 7.0);
}

TEST_CASE("pivoting path") {
    DenseMatrix a(2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    const std::vector<double> r{3.0, 7.0};
    const auto res = lu_solve(a, r);
    CHECK(res.x == std::vector<double>{7.0, 3.0});
    CHECK(res.reciprocal_pivot_growth == doctest::Approx(1.0));
}

TEST_CASE("singular matrices name the pivot") {
    DenseMatrix a(3, 1.0);
    try {
        LuFactorization lu(a);
        FAIL("expected a singular matrix error");
    } catch (const SingularMatrixError& e) {
        CHECK(e.pivot() == 1);
    }
    DenseMatrix z(2);
    CHECK_THROWS_AS(LuFactorization{z}, SingularMatrixError);
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(lu_solve(DenseMatrix::identity(3), std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("random systems reproduce a manufactured solution") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 5u, 17u, 41u, 64u}) {
        const auto a = random_matrix(n, rng);
        std::vector<double> x(n);
        for (auto& v : x) v = u(rng);
        const auto rhs = a.multiply(x);
        const auto res = lu_solve(a, rhs);
        double xn = 0.0;
        for (double v : x) xn = std::max(xn, std::abs(v));
        CHECK(max_abs_diff(res.x, x) <= 1e-9 * xn);
        const auto ax = a.multiply(res.x);
        CHECK(max_abs_diff(ax, rhs) <= 1e-10 * a.norm_inf() * xn);
        CHECK(res.reciprocal_pivot_growth > 0.0);
        CHECK(res.reciprocal_pivot_growth <= 1.0 + 1e-15);
    }
}

TEST_CASE("PA = LU reconstruction") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {3u, 10u, 33u}) {
        const auto a = random_matrix(n, rng);
        const LuFactorization lu(a);
        const auto l = lu.lower();
        const auto u = lu.upper();
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(l(i, i) == 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j > i) CHECK(l(i, j) == 0.0);
                if (j < i) CHECK(u(i, j) == 0.0);
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += l(i, k) * u(k, j);
                err = std::max(err, std::abs(s - a(lu.perm()[i], j)));
            }
        }
        CHECK(err <= 1e-12 * a.max_abs());
    }
}

TEST_CASE("transposed solve") {
    std::mt19937_64 rng(11);
    const auto a = random_matrix(12, rng);
    const LuFactorization lu(a);
    std::vector<double> y(12);
    for (std::size_t i = 0; i < 12; ++i) y[i] = std::sin(static_cast<double>(i));
    const auto z = lu.solve_transposed(y);
    for (std::size_t j = 0; j < 12; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 12; ++i) s += a(i, j) * z[i];
        CHECK(s == doctest::Approx(y[j]).epsilon(1e-11));
    }
}

TEST_CASE("condition estimate") {
    DenseMatrix d(4);
    d(0, 0) = 1.0;
    d(1, 1) = 10.0;
    d(2, 2) = 100.0;
    d(3, 3) = 1000.0;
    CHECK(LuFactorization(d).condition_estimate_1() == doctest::Approx(1000.0));
    // Hilbert matrix of order 6 has 1-norm condition number about 2.9e7
    DenseMatrix h(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
    const double est = LuFactorization(h).condition_estimate_1();
    CHECK(est == doctest::Approx(2.907027900294e7).epsilon(1e-6));
    // the estimate never exceeds the true value and is usually within a small factor of it
    std::mt19937_64 rng(5);
    const auto a = random_matrix(20, rng);
    const LuFactorization lu(a);
    double inv_norm = 0.0;
    for (std::size_t j = 0; j < 20; ++j) {
        std::vector<double> e(20, 0.0);
        e[j] = 1.0;
        const auto col = lu.solve(e);
        double s = 0.0;
        for (double v : col) s += std::abs(v);
        inv_norm = std::max(inv_norm, s);
    }
    const double exact = inv_norm * a.norm_1();
    CHECK(lu.condition_estimate_1() <= exact * (1 + 1e-12));
    CHECK(lu.condition_estimate_1() >= exact / 10);
}

TEST_CASE("matrix helpers") {
    DenseMatrix a(2);
    a(0, 0) = 1;
    a(0, 1) = -2;
    a(1, 0) = 3;
    a(1, 1) = 4;
    CHECK(a.norm_inf() == 7.0);
    CHECK(a.norm_1() == 6.0);
    CHECK(a.max_abs() == 4.0);
    a += DenseMatrix::identity(2);
    CHECK(a(1, 1) == 5.0);
    CHECK(a.multiply(std::vector<double>{1.0, 1.0}) == std::vector<double>{0.0, 8.0});
}
