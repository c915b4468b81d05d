#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>

#include "oscsum/expsum.hpp"
#include "oscsum/numeric.hpp"
#include "oscsum/rng.hpp"

using namespace oscsum;

TEST_CASE("fejer kernel") {
    CHECK(fejer(4.0, 0) == doctest::Approx(0.25));
    CHECK(fejer(4.0, 2) == doctest::Approx(0.125));
    CHECK(fejer(4.0, 4) == 0.0);
    CHECK(fejer(4.0, -5) == 0.0);
    CHECK_THROWS_AS(fejer(0.0, 1), PreconditionError);
    CHECK_THROWS_AS(fejer(-1.0, 1), PreconditionError);
    // unit mass over the integers for integer K
    for (int K = 1; K <= 64; ++K) {
        KahanSum s;
        for (long long k = -K; k <= K; ++k) s.add(fejer(K, k));
        CHECK(s.value() == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("exp_sum zero phase") {
    auto rep = exp_sum(Poly::zero(1), 1, Progression::full_box_1d(100), Amplitude::one());
    CHECK(rep.value.real() == doctest::Approx(1.0));
    CHECK(rep.value.imag() == 0.0);
    CHECK(rep.n_terms == 100);
    CHECK(rep.normalization == 100.0);
}

TEST_CASE("alternating square phase cancels exactly") {
    // e(n^2/2) = (-1)^n; even box length sums to exactly zero
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 2));
    auto rep = exp_sum(P, 1, Progression::full_box_1d(64), Amplitude::one());
    CHECK(rep.value == std::complex<double>(0.0, 0.0));
}

TEST_CASE("eighth-root phase against a direct oracle") {
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 4));
    auto rep = exp_sum(P, 1, Progression::full_box_1d(8), Amplitude::one());
    std::complex<double> expect{0.0, 0.0};
    for (int n = 1; n <= 8; ++n)
        expect += std::polar(1.0, 2.0 * M_PI * (static_cast<double>(n * n) / 4.0));
    expect /= 8.0;
    CHECK(std::abs(rep.value - expect) < 1e-12);
}

TEST_CASE("exp_sum invariants") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto gamma = index_set(3, 1);
        std::vector<Poly::Term> ts;
        for (const auto& a : gamma) ts.push_back({a, rng.uniform(), std::nullopt});
        Poly P(1, ts);
        AxisProgression ax;
        ax.box = 200;
        ax.start = rng.uniform_int(1, 5);
        ax.gap = rng.uniform_int(1, 3);
        ax.count = rng.uniform_int(10, 60);
        Progression prog({ax});
        auto rep = exp_sum(P, 1, prog, Amplitude::one());

        // triangle inequality, essentially exact
        double bound = static_cast<double>(rep.n_terms) / rep.normalization;
        CHECK(std::abs(rep.value) <= bound * (1.0 + 1e-12) + 1e-15);

        // conjugation
        auto neg = exp_sum(P.scaled_int(-1), 1, prog, Amplitude::one());
        CHECK(std::abs(neg.value - std::conj(rep.value)) < 1e-12);

        // shifting the phase by an integer-valued polynomial changes nothing;
        // merging an integer into a double coefficient rounds its low bits,
        // so the colliding-monomial check scales with the phase magnitude
        Poly shift(1, {{MultiIndex({2}), static_cast<double>(rng.uniform_int(1, 7)), std::nullopt},
                       {MultiIndex({3}), static_cast<double>(rng.uniform_int(1, 7)), std::nullopt}});
        auto shifted = exp_sum(P.plus(shift), 1, prog, Amplitude::one());
        CHECK(std::abs(shifted.value - rep.value) < 1e-8);
        // on a disjoint monomial the integer term reduces to zero phase bitwise
        Poly shift4 = Poly::monomial(1, MultiIndex({4}), static_cast<double>(rng.uniform_int(1, 7)));
        auto shifted4 = exp_sum(P.plus(shift4), 1, prog, Amplitude::one());
        CHECK(shifted4.value == rep.value);
    }
}

TEST_CASE("integer shift invariance is exact in rational mode") {
    Rng rng(23);
    auto prog = Progression::full_box_1d(500);
    for (int trial = 0; trial < 30; ++trial) {
        Poly P(1, {{MultiIndex({2}), 0.0, Rational(rng.uniform_int(1, 97), 97)},
                   {MultiIndex({3}), 0.0, Rational(rng.uniform_int(1, 89), 89)}});
        Poly shift(1, {{MultiIndex({2}), 0.0, Rational(rng.uniform_int(1, 7), 1)},
                       {MultiIndex({3}), 0.0, Rational(rng.uniform_int(1, 7), 1)}});
        auto a = exp_sum(P, 1, prog, Amplitude::one());
        auto b = exp_sum(P.plus(shift), 1, prog, Amplitude::one());
        CHECK(a.value == b.value);  // bitwise
    }
}

TEST_CASE("partition count is recorded and thread count is immaterial") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.1234567);
    auto prog = Progression::full_box_1d(5000);
    setenv("OSCSUM_THREADS", "1", 1);
    auto a = exp_sum(P, 1, prog, Amplitude::one(), 16);
    setenv("OSCSUM_THREADS", "2", 1);
    auto b = exp_sum(P, 1, prog, Amplitude::one(), 16);
    unsetenv("OSCSUM_THREADS");
    CHECK(a.value == b.value);  // bitwise
    CHECK(a.partitions == 16);
    // different partitionings agree to rounding
    auto c = exp_sum(P, 1, prog, Amplitude::one(), 1);
    CHECK(std::abs(a.value - c.value) < 1e-12);
}

TEST_CASE("mean-value regime") {
    // N_R(kP) = 0.5 <= 1: the sum equals the amplitude mean up to C * 0.5
    double R = 64.0;
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.5 / (R * R));
    auto prog = Progression::full_box_1d(static_cast<long long>(R));
    auto mv = small_norm_mean_value(P, 1, prog, Amplitude::one(), 4.0);
    CHECK(mv.norm_kP == doctest::Approx(0.5));
    CHECK(mv.pass);
    CHECK(mv.deviation <= 4.0 * 0.5);

    // large coefficient norm is rejected
    Poly big = Poly::monomial(1, MultiIndex({2}), 0.3);
    CHECK_THROWS_AS(small_norm_mean_value(big, 1, prog, Amplitude::one(), 4.0), PreconditionError);
}

TEST_CASE("amplitude certificate") {
    auto prog = Progression::full_box_1d(32);
    CHECK(Amplitude::one().certificate(prog) == doctest::Approx(1.0));
    Amplitude slow;
    slow.phi = [](std::span<const long long> p) {
        return 0.5 / (1.0 + 0.001 * static_cast<double>(p[0]));
    };
    double cert = slow.certificate(prog);
    CHECK(cert > 0.5);
    CHECK(cert < 2.0);
}

TEST_CASE("sublevel count, small-norm regime") {
    // ||v^2/3|| <= 1/100 iff 3 | v: exactly {-6, -3, 0, 3, 6} in [-8, 8]
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 3));
    auto r = sublevel_small_norm(P, 8.0, 1, 100.0, 0.25, 1 << 20);
    CHECK(r.count == 5);
    CHECK(r.norm == doctest::Approx(4.0));

    CHECK_THROWS_AS(sublevel_small_norm(Poly::zero(1), 8.0, 1, 100.0, 0.25, 1 << 20),
                    PreconditionError);
    CHECK_THROWS_AS(sublevel_small_norm(P, 8.0, 1, 50.0, 0.25, 1 << 20), PreconditionError);
    CHECK_THROWS_AS(sublevel_small_norm(P, 1e6, 1, 100.0, 0.25, 1 << 10), BudgetError);

    // random irrational coefficient: ratio stays under the frozen constant
    Poly Q = Poly::monomial(1, MultiIndex({2}), 0.7548776662466927);
    auto rq = sublevel_small_norm(Q, 1024.0, 4, 1024.0, 0.25, 1 << 22);
    CHECK(rq.ratio < 0.10);  // frozen constant
}

TEST_CASE("sublevel count, large-norm regime") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.6180339887498949);
    auto r = sublevel_large_norm(P, 1024.0, 0.05, 0.3, 1 << 22);
    CHECK(r.kappa0 > 0.0);

    // tiny denominator violates the norm hypothesis
    Poly bad = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 3));
    CHECK_THROWS_AS(sublevel_large_norm(bad, 1024.0, 0.05, 0.3, 1 << 22), PreconditionError);

    // kappa = 0 still counts the q = 1 sublevel set
    auto r0 = sublevel_large_norm(P, 256.0, 0.0, 0.3, 1 << 22);
    CHECK(r0.count >= 1);  // v = 0 is always in the set
}

TEST_CASE("oscillatory integral") {
    auto zero = oscillatory_integral(Poly::zero(1), 1.0, 1 << 22);
    CHECK(zero.abs_integral == doctest::Approx(1.0).epsilon(1e-10));

    // quadratic phase at strength 100: compare against a dense Riemann oracle
    Poly P = Poly::monomial(1, MultiIndex({2}), 100.0);
    auto r = oscillatory_integral(P, 2.90, 1 << 24);
    std::complex<double> oracle{0.0, 0.0};
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        double t = (i + 0.5) / N;
        oracle += std::polar(1.0, 2.0 * M_PI * 100.0 * t * t);
    }
    oracle /= static_cast<double>(N);
    CHECK(r.abs_integral == doctest::Approx(std::abs(oracle)).epsilon(1e-4));
    CHECK(r.abs_integral <= 2.90 * std::pow(101.0, -0.5));

    // separable two-dimensional phase multiplies
    Poly P2(2, {{MultiIndex({2, 0}), 7.0, std::nullopt}, {MultiIndex({0, 2}), 11.0, std::nullopt}});
    auto r2 = oscillatory_integral(P2, 1.0, 1 << 24);
    auto ra = oscillatory_integral(Poly::monomial(1, MultiIndex({2}), 7.0), 1.0, 1 << 22);
    auto rb = oscillatory_integral(Poly::monomial(1, MultiIndex({2}), 11.0), 1.0, 1 << 22);
    CHECK(r2.abs_integral == doctest::Approx(ra.abs_integral * rb.abs_integral).epsilon(1e-6));

    CHECK_THROWS_AS(oscillatory_integral(Poly::monomial(1, MultiIndex({2}), 1e9), 1.0, 1 << 10),
                    BudgetError);
}

TEST_CASE("continuous sublevel measure") {
    // eps above the norm: everything qualifies, bound is trivial
    Poly P = Poly::monomial(1, MultiIndex({2}), 1.0);
    auto triv = continuous_sublevel(P, 2.0, 1 << 12, 1.0);
    CHECK(triv.measure == doctest::Approx(1.0));

    // t^2 <= 0.01 on [0, 0.1]: measure exactly 0.1
    auto r = continuous_sublevel(P, 0.01, 1 << 14, 1.0);
    CHECK(r.measure == doctest::Approx(0.1).epsilon(1e-3));
    CHECK(r.bound == doctest::Approx(0.1));

    // shifted root: first-order width 2 eps / |P'(root)|
    Poly S(1, {{MultiIndex({2}), 1.0, std::nullopt}, {MultiIndex({0}), -0.5, std::nullopt}});
    auto rs = continuous_sublevel(S, 0.01, 1 << 14, 1.0);
    double width = 2.0 * 0.01 / (2.0 * std::sqrt(0.5));
    CHECK(rs.measure == doctest::Approx(width).epsilon(0.02));

    CHECK_THROWS_AS(continuous_sublevel(Poly::zero(1), 0.01, 1 << 10, 1.0), PreconditionError);
}

TEST_CASE("fejer majorization of the torus-ball indicator") {
    for (double B : {100.0, 256.0, 1000.0}) CHECK(fejer_majorization_margin(B, 1000) >= -1e-12);
}

TEST_CASE("decay experiment smoke") {
    auto table = verify_sum_decay(2, 1, 11, 1024.0, 10, 20000, Rng(99), 1);
    CHECK(table.populated >= 3);
    CHECK(table.theta_hat > 0.0);
    // stability under doubling the trial budget (coarse)
    auto table2 = verify_sum_decay(2, 1, 11, 1024.0, 20, 40000, Rng(99), 1);
    CHECK(table2.theta_hat > 0.0);
    CHECK(std::abs(table2.theta_hat - table.theta_hat) <= 0.5 * std::max(table.theta_hat, table2.theta_hat));
}
