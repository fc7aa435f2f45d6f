#include <doctest.h>

#include <cmath>
#include <string>

#include "fracspec/assembly.hpp"
#include "fracspec/composite_rule.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/specfun.hpp"
#include "oracle.hpp"

using namespace fracspec;

namespace {

ProblemSpec spec(double alpha, double r, const std::string& k, const std::string& b, const std::string& c,
                 const std::string& f, int N, Variant v = Variant::acute) {
    return ProblemSpec{FracParams::solve_beta(alpha, r), v, Expr::parse(k), Expr::parse(b), Expr::parse(c),
                       Expr::parse(f), N};
}

double max_entry_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// Independent brute-force entries.  Trial modes are differentiated with the product
// rule, written with the singular factor moved into the weight:
//   D[omega Ĝ_i] = omega^{(a-1,b-1)} ([b(1-x) - a x] Ĝ_i + x(1-x) Ĝ_i'),  (a,b) = (alpha-beta, beta).
struct Brute {
    oracle::Cond cd;
    std::vector<double> breaks;

    double a() const { return cd.alpha - cd.beta; }
    double b() const { return cd.beta; }

    double dtrial(int i, double x) const {
        return (b() * (1 - x) - a() * x) * oracle::Ghat(i, a(), b(), x) +
               x * (1 - x) * oracle::dG(i, a(), b(), x) / oracle::normG(i, a(), b());
    }
    // acute B0 entry (j,i) = integral of k D[omega phi_i] M*[omega* psi_j],
    // with M*[omega* Ĝ_j^{test}] = mu_j |||G_{j+1}^{low}||| / |||G_j^{test}||| Ĝ_{j+1}^{low}.
    double b0_acute(const Expr& k, int j, int i) const {
        const double la = a() - 1, lb = b() - 1;
        const double scale = cd.mu(j) * oracle::normG(j + 1, la, lb) / oracle::normG(j, b(), a());
        return oracle::weighted(
            [&](double x) { return k(x) * dtrial(i, x) * scale * oracle::Ghat(j + 1, la, lb, x); }, la, lb,
            breaks);
    }
    double b1(const Expr& bb, int j, int i) const {
        return oracle::weighted([&](double x) { return bb(x) * oracle::Ghat(j, b(), a(), x) * dtrial(i, x); },
                                cd.alpha - 1, cd.alpha - 1, breaks);
    }
    double b2(const Expr& c, int j, int i) const {
        return oracle::weighted(
            [&](double x) { return c(x) * oracle::Ghat(i, a(), b(), x) * oracle::Ghat(j, b(), a(), x); },
            cd.alpha, cd.alpha, breaks);
    }
    double rhs(const Expr& f, int j) const {
        return oracle::weighted([&](double x) { return f(x) * oracle::Ghat(j, b(), a(), x); }, b(), a(), breaks);
    }
};

}  // namespace

TEST_CASE("composite rule") {
    const JacobiParams legendre{0, 0};
    const auto plain = composite_rule(legendre, 1, {});
    REQUIRE(plain.size() == 1);
    CHECK(plain.nodes[0] == doctest::Approx(0.5));
    CHECK(plain.weights[0] == doctest::Approx(1.0));

    const std::vector<double> half{0.5};
    for (const auto& p : {JacobiParams{0.3, 0.6}, JacobiParams{-0.35, -0.35}, JacobiParams{0.65, 0.65}}) {
        const auto rule = composite_rule(p, 20, half);
        double s = 0.0;
        for (double w : rule.weights) s += w;
        CHECK(s == doctest::Approx(specfun::beta(p.a() + 1, p.b() + 1)).epsilon(1e-9));
        const auto pw = Expr::parse("piecewise(0.5; 2; 1)");
        const double ref = oracle::weighted([&](double x) { return pw(x); }, p.a(), p.b(), half);
        CHECK(std::abs(rule.integrate([&](double x) { return pw(x); }) - ref) <= 1e-9 * std::abs(ref));
        // piecewise polynomial of degree 2n-1 relative to the break
        const auto pp = [](double x) { return x < 0.5 ? std::pow(x, 39) : 1.0 - std::pow(x - 0.5, 39) + x * x; };
        const double ref2 = oracle::weighted(pp, p.a(), p.b(), half);
        CHECK(rule.integrate(pp) == doctest::Approx(ref2).epsilon(1e-9));
    }
    const std::vector<double> three{0.2, 0.5, 0.9};
    const auto multi = composite_rule({0.4, 0.1}, 10, three);
    CHECK(multi.size() == 40);
    for (std::size_t i = 1; i < multi.size(); ++i) CHECK(multi.nodes[i] > multi.nodes[i - 1]);
    CHECK_THROWS_AS(composite_rule({0, 0}, 4, std::vector<double>{0.5, 0.2}), DomainError);
    CHECK_THROWS_AS(composite_rule({0, 0}, 4, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("spec validation") {
    auto s = spec(1.3, 0.5, "1", "0", "0", "1", 8);
    CHECK(s.effective_quad_points() == 28);
    CHECK_NOTHROW(s.validate());
    s.quad_points = 10;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.quad_points = 0;
    s.N = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    const auto t = spec(1.3, 0.5, "1", "0", "0", "1", 8).with_degree(30);
    CHECK(t.N == 30);
    CHECK(t.effective_quad_points() >= 50);
}

TEST_CASE("constant diffusivity gives the closed-form diagonal") {
    for (double alpha : {1.3, 1.5, 1.8}) {
        for (double r : {0.3, 0.5, 1.0}) {
            const auto cd = oracle::cond(alpha, r);
            for (Variant v : {Variant::acute, Variant::grave}) {
                const auto B = assemble_B0(spec(alpha, r, "1", "0", "0", "1", 12, v));
                for (int i = 0; i <= 12; ++i) {
                    const double d = -cd.css * std::tgamma(i + alpha + 1) / std::tgamma(i + 1.0);
                    CHECK(B(i, i) == doctest::Approx(d).epsilon(1e-10));
                    for (int j = 0; j <= 12; ++j)
                        if (j != i) CHECK(std::abs(B(j, i)) <= 1e-10 * d);
                }
            }
        }
    }
    CHECK(assemble_B0(spec(1.5, 0.5, "1", "0", "0", "1", 3))(0, 0) ==
          doctest::Approx(std::sqrt(0.5) * std::tgamma(2.5)).epsilon(1e-12));
    CHECK(assemble_B0(spec(1.5, 0.5, "1", "0", "0", "1", 3))(0, 0) == doctest::Approx(0.93998).epsilon(1e-5));
}

TEST_CASE("B0 is linear in k") {
    const auto one = assemble_B0(spec(1.6, 0.4, "1+x", "0", "0", "1", 8));
    const auto two = assemble_B0(spec(1.6, 0.4, "2*(1+x)", "0", "0", "1", 8));
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) CHECK(two(j, i) == doctest::Approx(2 * one(j, i)).epsilon(1e-14).scale(1e-14));
}

TEST_CASE("B0 entries against brute-force quadrature") {
    for (const auto& [alpha, r] : {std::pair{1.3, 0.5}, std::pair{1.6, 0.4}}) {
        const Brute br{oracle::cond(alpha, r), {}};
        const auto k = Expr::parse("1+2*x");
        const auto B = assemble_B0(spec(alpha, r, "1+2*x", "0", "0", "1", 6));
        for (int j = 0; j <= 6; ++j)
            for (int i = 0; i <= 6; ++i) CHECK(std::abs(B(j, i) - br.b0_acute(k, j, i)) <= 1e-9 * B.max_abs());
    }
}

TEST_CASE("acute and grave B0 agree exactly when k is constant") {
    // The two forms differ for variable k and agree when k is constant.
    const auto acute = assemble_B0(spec(1.4, 0.4, "3", "0", "0", "1", 10, Variant::acute));
    const auto grave = assemble_B0(spec(1.4, 0.4, "3", "0", "0", "1", 10, Variant::grave));
    CHECK(max_entry_diff(acute, grave) <= 1e-12 * acute.max_abs());
    const auto acute_k = assemble_B0(spec(1.4, 0.4, "1+2*x", "0", "0", "1", 10, Variant::acute));
    const auto grave_k = assemble_B0(spec(1.4, 0.4, "1+2*x", "0", "0", "1", 10, Variant::grave));
    CHECK(max_entry_diff(acute_k, grave_k) > 1e-3);
}

TEST_CASE("grave B0 entries against brute-force quadrature") {
    // <-D(k M[omega phi_i]), omega* psi_j> integrated by parts is (k M[omega phi_i], D[omega* psi_j]),
    // with M[omega Ĝ_i^{trial}] = mu_i nr Ĝ_{i+1}^{(beta-1,alpha-beta-1)} and D[omega* Ĝ_j^{test}]
    // computed by the product rule.
    const auto cd = oracle::cond(1.6, 0.4);
    const double a = cd.alpha - cd.beta, b = cd.beta;
    const auto k = Expr::parse("1+2*x");
    const auto B = assemble_B0(spec(1.6, 0.4, "1+2*x", "0", "0", "1", 6, Variant::grave));
    for (int j = 0; j <= 6; ++j) {
        for (int i = 0; i <= 6; ++i) {
            const double scale = cd.mu(i) * oracle::normG(i + 1, b - 1, a - 1) / oracle::normG(i, a, b);
            // D[omega* Ĝ_j] = omega^{(b-1,a-1)} ([a(1-x) - b x] Ĝ_j + x(1-x) Ĝ_j')
            const double ref = oracle::weighted(
                [&](double x) {
                    const double m = scale * oracle::Ghat(i + 1, b - 1, a - 1, x);
                    const double dpsi = (a * (1 - x) - b * x) * oracle::Ghat(j, b, a, x) +
                                        x * (1 - x) * oracle::dG(j, b, a, x) / oracle::normG(j, b, a);
                    return k(x) * m * dpsi;
                },
                b - 1, a - 1);
            CHECK(std::abs(B(j, i) - ref) <= 1e-9 * B.max_abs());
        }
    }
}

TEST_CASE("B1") {
    CHECK(assemble_B1(spec(1.3, 0.5, "1", "0", "0", "1", 5)).max_abs() == 0.0);
    for (const char* bsrc : {"1", "exp(x)"}) {
        const Brute br{oracle::cond(1.3, 0.5), {}};
        const auto bb = Expr::parse(bsrc);
        const auto B = assemble_B1(spec(1.3, 0.5, "1", bsrc, "0", "1", 6));
        for (int j = 0; j <= 6; ++j)
            for (int i = 0; i <= 6; ++i) CHECK(std::abs(B(j, i) - br.b1(bb, j, i)) <= 1e-9 * B.max_abs());
    }
    const auto one = assemble_B1(spec(1.6, 0.4, "1", "exp(x)", "0", "1", 6));
    const auto two = assemble_B1(spec(1.6, 0.4, "1", "2*exp(x)", "0", "1", 6));
    CHECK(max_entry_diff(two, [&] {
              DenseMatrix d = one;
              d += one;
              return d;
          }()) <= 1e-13 * two.max_abs());
}

TEST_CASE("B2") {
    CHECK(assemble_B2(spec(1.3, 0.5, "1", "0", "0", "1", 5)).max_abs() == 0.0);
    const auto B = assemble_B2(spec(1.5, 0.5, "1", "0", "1", "1", 8));
    CHECK(B(0, 0) == doctest::Approx(specfun::beta(2.5, 2.5) / specfun::beta(1.75, 1.75)).epsilon(1e-12));
    CHECK(B(0, 0) == doctest::Approx(0.289699).epsilon(1e-5));
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) CHECK(std::abs(B(j, i) - B(i, j)) <= 1e-12 * B.max_abs());
    const Brute br{oracle::cond(1.6, 0.4), {}};
    const auto c = Expr::parse("5+sin(x)");
    const auto C = assemble_B2(spec(1.6, 0.4, "1", "0", "5+sin(x)", "1", 6));
    for (int j = 0; j <= 6; ++j)
        for (int i = 0; i <= 6; ++i) CHECK(std::abs(C(j, i) - br.b2(c, j, i)) <= 1e-10 * C.max_abs());
}

TEST_CASE("load vector") {
    const auto F = assemble_rhs(spec(1.3, 0.5, "1", "0", "0", "1", 6));
    CHECK(F[0] == doctest::Approx(std::sqrt(specfun::beta(1.65, 1.65))).epsilon(1e-13));
    CHECK(F[0] == doctest::Approx(0.549482).epsilon(1e-5));
    for (int j = 1; j <= 6; ++j) CHECK(std::abs(F[j]) <= 1e-13);

    // f = Ĝ_2^{test}: the load is e_2, fixing the row orientation
    const auto cd = oracle::cond(1.6, 0.4);
    const auto mode = oracle::mode_expr(2, cd.beta, cd.alpha - cd.beta);
    const auto G2 = assemble_rhs(spec(1.6, 0.4, "1", "0", "0", mode, 6));
    for (int j = 0; j <= 6; ++j) CHECK(std::abs(G2[j] - (j == 2 ? 1.0 : 0.0)) <= 1e-12);

    const Brute br{cd, {}};
    const auto f = Expr::parse("exp(x)*cos(2*x)");
    const auto H = assemble_rhs(spec(1.6, 0.4, "1", "0", "0", "exp(x)*cos(2*x)", 6));
    for (int j = 0; j <= 6; ++j) CHECK(std::abs(H[j] - br.rhs(f, j)) <= 1e-12);
}

TEST_CASE("piecewise coefficients are integrated across their jump") {
    const Brute br{oracle::cond(1.4, 0.4), {0.5}};
    const auto k = Expr::parse("piecewise(0.5; 2; 1)");
    const auto B = assemble_B0(spec(1.4, 0.4, "piecewise(0.5; 2; 1)", "0", "0", "1", 6));
    for (int j = 0; j <= 6; ++j)
        for (int i = 0; i <= 6; ++i) CHECK(std::abs(B(j, i) - br.b0_acute(k, j, i)) <= 1e-9 * B.max_abs());
    const auto f = Expr::parse("piecewise(0.5; 0; 1)");
    const auto F = assemble_rhs(spec(1.4, 0.4, "1", "0", "0", "piecewise(0.5; 0; 1)", 6));
    for (int j = 0; j <= 6; ++j) CHECK(std::abs(F[j] - br.rhs(f, j)) <= 1e-11);
}

TEST_CASE("assembled system properties") {
    SUBCASE("diagonal with positive entries for constant k and no lower-order terms") {
        const auto cd = oracle::cond(1.7, 0.6);
        const auto sys = assemble(spec(1.7, 0.6, "2.5", "0", "0", "1", 10));
        for (int i = 0; i <= 10; ++i) {
            CHECK(sys.matrix(i, i) ==
                  doctest::Approx(2.5 * -cd.css * std::tgamma(i + 2.7) / std::tgamma(i + 1.0)).epsilon(1e-10));
            for (int j = 0; j <= 10; ++j) if (i != j) CHECK(std::abs(sys.matrix(j, i)) <= 1e-10 * sys.matrix.max_abs());
        }
        CHECK(sys.k_min == 2.5);
    }
    SUBCASE("variants coincide for constant k with lower-order terms") {
        const auto a = assemble(spec(1.4, 0.4, "1", "exp(x)", "5+sin(x)", "1", 12, Variant::acute));
        const auto g = assemble(spec(1.4, 0.4, "1", "exp(x)", "5+sin(x)", "1", 12, Variant::grave));
        CHECK(max_entry_diff(a.matrix, g.matrix) <= 1e-12 * a.matrix.max_abs());
    }
    SUBCASE("doubling the quadrature leaves polynomial-coefficient entries unchanged") {
        for (Variant v : {Variant::acute, Variant::grave}) {
            auto s = spec(1.3, 0.5, "1+2*x-x^3", "1-x+x^2", "2+x^3", "1+x", 14, v);
            const auto base = assemble(s);
            s.quad_points = 2 * s.effective_quad_points();
            const auto fine = assemble(s);
            CHECK(max_entry_diff(base.matrix, fine.matrix) <= 1e-10);
        }
    }
    SUBCASE("B0 diagonal stays positive for variable positive k") {
        for (Variant v : {Variant::acute, Variant::grave}) {
            const auto B = assemble_B0(spec(1.6, 0.4, "1-0.3*sin(x)", "0", "0", "1", 20, v));
            for (int i = 0; i <= 20; ++i) CHECK(B(i, i) > 0.0);
        }
    }
    SUBCASE("non-positive diffusivity is rejected") {
        CHECK_THROWS_AS(assemble(spec(1.3, 0.5, "x-0.5", "0", "0", "1", 6)), CoefficientError);
        CHECK_THROWS_AS(assemble(spec(1.3, 0.5, "0", "0", "0", "1", 6)), CoefficientError);
        try {
            (void)assemble(spec(1.3, 0.5, "x-0.5", "0", "0", "1", 6));
        } catch (const CoefficientError& e) {
            CHECK(std::string(e.what()).find("k(") != std::string::npos);
        }
    }
    SUBCASE("evaluation failures propagate") {
        CHECK_THROWS_AS(assemble(spec(1.3, 0.5, "1", "log(x-2)", "0", "1", 6)), EvalError);
    }
}
