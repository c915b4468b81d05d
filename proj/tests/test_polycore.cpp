#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oscsum/numeric.hpp"
#include "oscsum/poly.hpp"
#include "oscsum/rng.hpp"

using namespace oscsum;

TEST_CASE("torus norm basics") {
    CHECK(torus_norm(0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(torus_norm(0.7) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(torus_norm(1.0) == 0.0);
    CHECK(torus_norm(-2.25) == doctest::Approx(0.25));
    CHECK_THROWS_AS(torus_norm(std::nan("")), PreconditionError);
    CHECK_THROWS_AS(torus_norm(INFINITY), PreconditionError);
}

TEST_CASE("torus norm is 1-periodic and even") {
    Rng rng(123);
    for (int i = 0; i < 10000; ++i) {
        double x = 200.0 * rng.uniform() - 100.0;
        CHECK(torus_norm(x) == torus_norm(x + 1.0));
        CHECK(torus_norm(-x) == torus_norm(x));
    }
}

TEST_CASE("exact torus norm") {
    CHECK(Rational(1, 3).torus_norm() == Rational(1, 3));
    CHECK(Rational(2, 3).torus_norm() == Rational(1, 3));
    CHECK(Rational(7, 2).torus_norm() == Rational(1, 2));
    CHECK(Rational(-1, 4).torus_norm() == Rational(1, 4));
    CHECK(Rational(9, 3).torus_norm().is_zero());
}

TEST_CASE("polynomial evaluation") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.5);
    double x[1] = {3.0};
    CHECK(P.eval(std::span<const double>(x, 1)) == doctest::Approx(4.5));

    Poly Q(2, {{MultiIndex({2, 0}), 1.0, std::nullopt}, {MultiIndex({0, 2}), 1.0, std::nullopt}});
    double y[2] = {1.0, 2.0};
    CHECK(Q.eval(std::span<const double>(y, 2)) == doctest::Approx(5.0));

    Poly R = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 3));
    long long n[1] = {3};
    CHECK(R.eval_exact(std::span<const long long>(n, 1)) == Rational(3, 1));
    CHECK(R.phase_mod1(std::span<const long long>(n, 1)) == 0.0);

    double bad[2] = {1.0, 2.0};
    CHECK_THROWS_AS(P.eval(std::span<const double>(bad, 2)), UsageError);
}

TEST_CASE("euclidean coefficient norm") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.5);
    CHECK(P.weighted_coeff_sum(4.0) == doctest::Approx(8.0));
    CHECK(Poly::zero(1).weighted_coeff_sum(7.0) == 0.0);
    Poly Q(1, {{MultiIndex({2}), 1.0, std::nullopt}, {MultiIndex({3}), 1.0, std::nullopt}});
    CHECK(Q.weighted_coeff_sum(2.0) == doctest::Approx(12.0));
}

TEST_CASE("coefficient-sum norm properties") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto gamma = index_set(3, 2);
        std::vector<Poly::Term> a, b;
        for (const auto& al : gamma) {
            a.push_back({al, 2.0 * rng.uniform() - 1.0, std::nullopt});
            b.push_back({al, 2.0 * rng.uniform() - 1.0, std::nullopt});
        }
        Poly A(2, a), B(2, b);
        double t = 1.0 + 3.0 * rng.uniform();
        double c = 2.0 * rng.uniform() - 1.0;
        CHECK(A.scaled(c).weighted_coeff_sum(t) ==
              doctest::Approx(std::abs(c) * A.weighted_coeff_sum(t)).epsilon(1e-12));
        CHECK(A.plus(B).weighted_coeff_sum(t) <=
              A.weighted_coeff_sum(t) + B.weighted_coeff_sum(t) + 1e-12);
    }
}

TEST_CASE("dyadic scale profile") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 1.0);
    auto prof = dyadic_scale_profile(P, 6);
    for (int j = 0; j <= 6; ++j) CHECK(prof.values[j] == doctest::Approx(std::pow(4.0, j)));
    REQUIRE(prof.j_lambda.has_value());
    CHECK(*prof.j_lambda == 0);  // 4^0 = 1 <= 1 < 4

    Poly Q = Poly::monomial(1, MultiIndex({2}), std::ldexp(1.0, -10));
    auto prof_q = dyadic_scale_profile(Q, 8);
    REQUIRE(prof_q.j_lambda.has_value());
    CHECK(*prof_q.j_lambda == 5);  // 2^{2j-10} <= 1 iff j <= 5

    Poly big = Poly::monomial(1, MultiIndex({2}), 3.0);
    CHECK_FALSE(dyadic_scale_profile(big, 4).j_lambda.has_value());

    auto prof_z = dyadic_scale_profile(Poly::zero(1), 4);
    CHECK(prof_z.zero_poly);
    CHECK_FALSE(prof_z.j_lambda.has_value());
}

TEST_CASE("profile monotone with interval level sets") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        auto gamma = index_set(3, 1);
        std::vector<Poly::Term> ts;
        for (const auto& al : gamma) ts.push_back({al, rng.uniform() + 1e-6, std::nullopt});
        Poly P(1, ts);
        auto prof = dyadic_scale_profile(P, 12);
        for (size_t j = 1; j < prof.values.size(); ++j) CHECK(prof.values[j] > prof.values[j - 1]);
        for (size_t i = 1; i < prof.levels.size(); ++i) {
            CHECK(prof.levels[i].j_lo == prof.levels[i - 1].j_hi + 1);
            CHECK(prof.levels[i].level > prof.levels[i - 1].level);
        }
    }
}

TEST_CASE("shift difference expansion") {
    // lambda n^2 -> 2 lambda h n + lambda h^2
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(3, 7));
    Poly d = P.shift_difference(5, 0);
    const auto* lin = d.find(MultiIndex({1}));
    const auto* con = d.find(MultiIndex({0}));
    REQUIRE(lin != nullptr);
    REQUIRE(con != nullptr);
    CHECK(*lin->exact == Rational(30, 7));
    CHECK(*con->exact == Rational(75, 7));

    // n^3 with h = 1 -> 3n^2 + 3n + 1
    Poly C = Poly::monomial_exact(1, MultiIndex({3}), Rational(1, 1));
    Poly dc = C.shift_difference(1, 0);
    CHECK(*dc.find(MultiIndex({2}))->exact == Rational(3, 1));
    CHECK(*dc.find(MultiIndex({1}))->exact == Rational(3, 1));
    CHECK(*dc.find(MultiIndex({0}))->exact == Rational(1, 1));
}

TEST_CASE("shift difference agrees with direct evaluation") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        auto gamma = index_set(3, 2);
        std::vector<Poly::Term> ts;
        for (const auto& al : gamma)
            ts.push_back({al, 0.0, Rational(rng.uniform_int(-9, 9), 1)});
        Poly P(2, ts);
        long long h = rng.uniform_int(1, 4);
        int axis = static_cast<int>(rng.uniform_int(0, 1));
        Poly d = P.shift_difference(h, axis);
        for (long long x0 = -10; x0 <= 10; x0 += 4)
            for (long long x1 = -10; x1 <= 10; x1 += 4) {
                long long pt[2] = {x0, x1};
                long long shifted[2] = {x0, x1};
                shifted[axis] += h;
                Rational lhs = d.eval_exact(std::span<const long long>(pt, 2));
                Rational rhs = P.eval_exact(std::span<const long long>(shifted, 2)) -
                               P.eval_exact(std::span<const long long>(pt, 2));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("index set of restricted exponents") {
    auto g21 = index_set(2, 1);
    REQUIRE(g21.size() == 1);
    CHECK(g21[0] == MultiIndex({2}));
    auto g32 = index_set(3, 2);
    CHECK(g32.size() == 7);
    for (const auto& a : g32) {
        CHECK(a.degree() >= 2);
        CHECK(a.degree() <= 3);
    }
    // graded-lex sorted
    for (size_t i = 1; i < g32.size(); ++i) CHECK(graded_lex_less(g32[i - 1], g32[i]));
}

TEST_CASE("json round trip") {
    Poly P(2, {{MultiIndex({2, 0}), 0.25, std::nullopt},
               {MultiIndex({1, 1}), 0.0, Rational(1, 3)},
               {MultiIndex({0, 3}), -1.5, std::nullopt}});
    Poly Q = Poly::from_json(P.to_json());
    REQUIRE(Q.terms().size() == P.terms().size());
    for (size_t i = 0; i < P.terms().size(); ++i) {
        CHECK(Q.terms()[i].alpha == P.terms()[i].alpha);
        CHECK(Q.terms()[i].coeff == P.terms()[i].coeff);
        CHECK(Q.terms()[i].exact.has_value() == P.terms()[i].exact.has_value());
    }
}

TEST_CASE("inline polynomial syntax") {
    Poly P = Poly::parse_inline("{(2):0.5}");
    CHECK(P.dim() == 1);
    CHECK(P.find(MultiIndex({2}))->coeff == 0.5);

    Poly Q = Poly::parse_inline("{(2,0):1/3, (1,1):-2}");
    CHECK(Q.dim() == 2);
    CHECK(*Q.find(MultiIndex({2, 0}))->exact == Rational(1, 3));
    CHECK(Q.find(MultiIndex({1, 1}))->coeff == -2.0);

    CHECK_THROWS_AS(Poly::parse_inline("(2):0.5"), UsageError);
    CHECK_THROWS_AS(Poly::parse_inline("{(2):}"), UsageError);
    CHECK_THROWS_AS(Poly::parse_inline("{(2):abc}"), UsageError);
}

TEST_CASE("restricted membership") {
    Poly P = Poly::parse_inline("{(2):0.5,(3):1}");
    CHECK(P.restricted_to(3));
    CHECK_FALSE(P.restricted_to(2));
    Poly lin = Poly::parse_inline("{(1):0.5}");
    CHECK_FALSE(lin.restricted_to(3));
}

TEST_CASE("quarter phases are exact") {
    CHECK(cis_unit(0.0) == std::complex<double>(1.0, 0.0));
    CHECK(cis_unit(0.25) == std::complex<double>(0.0, 1.0));
    CHECK(cis_unit(0.5) == std::complex<double>(-1.0, 0.0));
    CHECK(cis_unit(0.75) == std::complex<double>(0.0, -1.0));
}
