#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oscsum/invthm.hpp"
#include "oscsum/numeric.hpp"
#include "oscsum/rng.hpp"

using namespace oscsum;

TEST_CASE("certificate for exact rational coefficients") {
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(2, 7));
    auto prog = Progression::full_box_1d(2000);
    auto res = inverse_verify(P, prog, 0.1, 6);
    CHECK(res.kind == InverseOutcome::Certificate);
    REQUIRE(res.cert.has_value());
    CHECK(res.cert->Q == 7);
    CHECK(res.cert->max_defect == 0.0);
}

TEST_CASE("certificate for perturbed rationals") {
    double eps = 1e-10;
    Poly P = Poly::monomial(1, MultiIndex({2}), 1.0 / 7.0 + eps);
    auto prog = Progression::full_box_1d(2000);
    auto res = inverse_verify(P, prog, 0.1, 6);
    CHECK(res.kind == InverseOutcome::Certificate);
    REQUIRE(res.cert.has_value());
    CHECK(res.cert->Q == 7);
    CHECK(res.cert->max_defect <= 7.0 * eps * 2000.0 * 2000.0 * 1.01);
}

TEST_CASE("precondition: the sum must be large") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.6180339887498949);
    auto prog = Progression::full_box_1d(4096);
    CHECK_THROWS_AS(inverse_verify(P, prog, 0.1, 6), PreconditionError);
}

TEST_CASE("precondition: gaps bounded by 1/delta") {
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 3));
    Progression prog({AxisProgression{1, 20, 50, 1000}});
    CHECK_THROWS_AS(inverse_verify(P, prog, 0.1, 6), PreconditionError);
}

TEST_CASE("counterexample report when the exponent budget is too small") {
    // 1/49 has a large enough sum but no denominator within delta^{-1} = 10
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(1, 49));
    auto prog = Progression::full_box_1d(10000);
    auto res = inverse_verify(P, prog, 0.1, 1);
    CHECK(res.kind == InverseOutcome::Counterexample);
    CHECK(res.note.find("constants too small") != std::string::npos);
}

TEST_CASE("small box alternative") {
    // two coefficients, generically inapproximable, box below delta^{-C}
    Poly P(1, {{MultiIndex({2}), 2.57309184e-05, std::nullopt},
               {MultiIndex({3}), 1.9312743e-07, std::nullopt}});
    auto prog = Progression::full_box_1d(30);
    auto res = inverse_verify(P, prog, 0.4, 4, 1 << 21);
    // phases are tiny so the sum is near 1; with Q <= delta^{-2} ~ 6 a zero
    // defect is impossible, but the certificate may still meet the bound;
    // either way the small-box flag must be on when it applies
    if (res.kind == InverseOutcome::SmallBox) {
        CHECK(res.note.find("N_i") != std::string::npos);
    } else {
        CHECK(res.small_box_also);
    }
}

TEST_CASE("certificate self-check") {
    Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        long long q = 3 + 2 * rng.uniform_int(0, 3);  // odd: the quadratic sum never vanishes
        long long a = rng.uniform_int(1, q - 1);
        Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(a, q));
        auto prog = Progression::full_box_1d(1000);
        double delta = 0.05;
        auto res = inverse_verify(P, prog, delta, 6);
        REQUIRE(res.kind == InverseOutcome::Certificate);
        // re-substitute: every reported defect matches a direct evaluation
        double bound = std::pow(delta, -6);
        CHECK(static_cast<double>(res.cert->Q) <= bound);
        for (double dv : res.cert->defects) CHECK(dv <= bound);
    }
}

TEST_CASE("differencing inequality basics") {
    // constant phase: lhs^2 = 1, fejer mass ~ 1
    std::vector<std::complex<double>> F(512, std::complex<double>(1.0, 0.0));
    auto r = vdc_difference(F, 32.0);
    CHECK(r.lhs_sq == doctest::Approx(1.0));
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(0.05));

    // alternating phase e(n/2) on an even interval: exactly zero average
    Poly half = Poly::monomial_exact(1, MultiIndex({1}), Rational(1, 2));
    std::vector<std::complex<double>> A;
    for (long long n = 1; n <= 512; ++n) {
        long long pt[1] = {n};
        A.push_back(cis_unit(half.phase_mod1(std::span<const long long>(pt, 1))));
    }
    auto ra = vdc_difference(A, 32.0);
    CHECK(ra.lhs_sq == 0.0);
    CHECK(ra.ratio == 0.0);

    // quadratic irrational phase at the spec scales
    Poly quad = Poly::monomial(1, MultiIndex({2}), 0.41421356237309515);
    std::vector<std::complex<double>> Q;
    for (long long n = 1; n <= 4096; ++n) {
        long long pt[1] = {n};
        Q.push_back(cis_unit(quad.phase_mod1(std::span<const long long>(pt, 1))));
    }
    auto rq = vdc_difference(Q, 64.0);
    CHECK(rq.ratio <= 2.06);  // frozen constant

    CHECK_THROWS_AS(vdc_difference(F, 1000.0), PreconditionError);
    CHECK_THROWS_AS(vdc_difference(std::vector<std::complex<double>>{}, 1.0), PreconditionError);
}

TEST_CASE("taylor shift deviation") {
    // integer coefficients: exact divisibility, zero deviation, zero bound
    Poly P(1, {{MultiIndex({2}), 0.0, Rational(3, 1)}, {MultiIndex({3}), 0.0, Rational(2, 1)}});
    long long t0[1] = {17};
    auto r = taylor_shift_check(P, 4, 0.0, std::span<const long long>(t0, 1), {10}, {100}, 2.0);
    CHECK(r.max_deviation == 0.0);
    CHECK(r.pass);
    CHECK_FALSE(r.vacuous);

    // near-rational: deviation within the certified bound
    long long q = 7;
    Poly N(1, {{MultiIndex({2}), 1.0 / 7.0 + 1e-9, std::nullopt}});
    double Delta = torus_norm(q * (1.0 / 7.0 + 1e-9)) * 100.0 * 100.0;
    long long s0[1] = {30};
    auto rn = taylor_shift_check(N, q, Delta, std::span<const long long>(s0, 1), {10}, {100}, 2.0);
    CHECK(rn.pass);
    CHECK_FALSE(rn.vacuous);

    // hypothesis failure names the offending exponent
    try {
        taylor_shift_check(N, q, Delta / 100.0, std::span<const long long>(s0, 1), {10}, {100}, 2.0);
        CHECK(false);
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("(2)") != std::string::npos);
    }

    // M = N makes the bound vacuous for large Delta
    Poly V(1, {{MultiIndex({2}), 0.123, std::nullopt}});
    double DeltaV = torus_norm(3.0 * 0.123) * 100.0 * 100.0;
    auto rv = taylor_shift_check(V, 3, DeltaV, std::span<const long long>(s0, 1), {100}, {100}, 2.0);
    CHECK(rv.vacuous);
    CHECK(rv.pass);
}

TEST_CASE("taylor deviation scales linearly in the certified smallness") {
    // log-log slope of max deviation against Delta within 20% of 1
    long long q = 5, Nv = 200;
    long long t0[1] = {40};
    std::vector<double> deltas, devs;
    for (double eps : {1e-8, 1e-7, 1e-6}) {
        Poly P(1, {{MultiIndex({2}), 1.0 / 5.0 + eps, std::nullopt}});
        double Delta = torus_norm(q * (1.0 / 5.0 + eps)) * Nv * Nv;
        auto r = taylor_shift_check(P, q, Delta, std::span<const long long>(t0, 1), {20}, {Nv}, 2.0);
        deltas.push_back(Delta);
        devs.push_back(r.max_deviation);
    }
    double slope = std::log(devs[2] / devs[0]) / std::log(deltas[2] / deltas[0]);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("condensation of near-hits") {
    // exact rational: true denominator, zero defect
    std::vector<long long> H;
    for (long long n = 6; n <= 600; n += 6) H.push_back(n);
    auto r = condense(1.0 / 6.0, Rational(1, 6), H, 600, 0.0, 1.0 / 6.0, 2.0);
    CHECK(r.found);
    CHECK(r.q == 6);
    CHECK(r.defect == 0.0);

    // perturbed: same denominator, defect ~ q * eps within the bound
    double tiny = 1e-8;
    auto rp = condense(1.0 / 6.0 + tiny, std::nullopt, H, 600, 600.0 * tiny, 1.0 / 6.0, 2.0);
    CHECK(rp.found);
    CHECK(rp.q == 6);
    CHECK(rp.defect == doctest::Approx(6.0 * tiny).epsilon(1e-3));

    // hypothesis violations are rejected
    std::vector<long long> bad = {1, 2, 3};
    CHECK_THROWS_AS(condense(0.37, std::nullopt, bad, 600, 1e-6, 1.0 / 6.0, 2.0),
                    PreconditionError);
    CHECK_THROWS_AS(condense(1.0 / 6.0, Rational(1, 6), H, 600, 0.0, 0.9, 2.0), PreconditionError);
}

TEST_CASE("rescale partitions exactly") {
    // identity
    auto prog1 = Progression::full_box_1d(100);
    auto id = rescale(prog1, 1, 1.0);
    REQUIRE(id.subs.size() == 1);
    CHECK(id.subs[0].size() == 100);
    CHECK(id.remainder.empty());

    // [1..100], K = 3, fraction 0.1: classes of ~33 split into 10-runs
    auto r = rescale(prog1, 3, 0.1);
    CHECK(r.subs.size() == 9);
    for (const auto& s : r.subs) {
        CHECK(s.size() == 10);
        CHECK(s.axes[0].gap == 3);
    }
    CHECK(r.remainder.size() == 10);
    CHECK(r.remainder_fraction == doctest::Approx(0.1));

    // two-dimensional product structure
    Progression p2({AxisProgression{1, 1, 30, 30}, AxisProgression{1, 2, 20, 40}});
    auto r2 = rescale(p2, 2, 0.25);
    for (const auto& s : r2.subs) {
        CHECK(s.axes[0].gap == 2);
        CHECK(s.axes[1].gap == 4);
    }
    // exact partition: every point lands in exactly one sub or the remainder
    long long covered = 0;
    for (const auto& s : r2.subs) covered += s.size();
    CHECK(covered + static_cast<long long>(r2.remainder.size()) == p2.size());

    CHECK_THROWS_AS(rescale(prog1, 1, 0.001), PreconditionError);
}

TEST_CASE("rescale partition is an exact set equality") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        AxisProgression ax;
        ax.start = rng.uniform_int(1, 5);
        ax.gap = rng.uniform_int(1, 3);
        ax.count = rng.uniform_int(20, 80);
        ax.box = ax.start + ax.count * ax.gap;
        Progression prog({ax});
        long long K = rng.uniform_int(1, 4);
        double frac_t = 0.05 + 0.3 * rng.uniform();
        auto r = rescale(prog, K, frac_t);
        std::vector<long long> seen;
        for (const auto& s : r.subs)
            s.for_each([&](long long, std::span<const long long> p) { seen.push_back(p[0]); });
        for (const auto& p : r.remainder) seen.push_back(p[0]);
        std::vector<long long> orig;
        prog.for_each([&](long long, std::span<const long long> p) { orig.push_back(p[0]); });
        std::sort(seen.begin(), seen.end());
        std::sort(orig.begin(), orig.end());
        CHECK(seen == orig);
    }
}

TEST_CASE("induction demo on exact denominator five") {
    Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(2, 5));
    auto prog = Progression::full_box_1d(10000);
    auto tr = induction_demo(P, prog, 0.1, 6, 2.0);
    CHECK(tr.complete);
    REQUIRE(tr.certs.size() == 1);
    CHECK(tr.certs[0].Q % 5 == 0);
    CHECK(tr.certs[0].scaled_defect == 0.0);
    CHECK(tr.common_q >= 1);
    CHECK(tr.H_prime.size() >= 2);
}

TEST_CASE("induction demo rejects small sums") {
    Poly P = Poly::monomial(1, MultiIndex({2}), 0.6180339887498949);
    auto prog = Progression::full_box_1d(4096);
    CHECK_THROWS_AS(induction_demo(P, prog, 0.1, 6, 2.0), PreconditionError);
}

TEST_CASE("induction demo with a cubic term") {
    Poly P(1, {{MultiIndex({2}), 0.0, Rational(1, 3)}, {MultiIndex({3}), 0.0, Rational(2, 3)}});
    auto prog = Progression::full_box_1d(3000);
    double delta = 0.05;
    auto rep = exp_sum(P, 1, prog, Amplitude::one());
    if (std::abs(rep.value) >= delta) {
        auto tr = induction_demo(P, prog, delta, 6, 2.0);
        CHECK(tr.complete);
        REQUIRE(tr.certs.size() == 1);  // only the top coefficient (3)
        CHECK(tr.certs[0].alpha == MultiIndex({3}));
        CHECK(tr.certs[0].Q % 3 == 0);
    }
}
