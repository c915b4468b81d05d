#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oscsum/coeffnorm.hpp"
#include "oscsum/cyclotomic.hpp"
#include "oscsum/gauss.hpp"
#include "oscsum/rng.hpp"

using namespace oscsum;

TEST_CASE("cyclotomic zero test") {
    // 1 + x + x^2 + x^3 vanishes at every primitive 4th root? no: it is
    // (x^4-1)/(x-1), zero at i, -1, -i; as a sum of all 4th roots it is 0.
    CycloSum s(4);
    for (int k = 0; k < 4; ++k) s.add(k);
    CHECK(s.is_zero());
    CycloSum t(4);
    t.add(0);
    t.add(2);
    CHECK(t.is_zero());  // 1 + zeta^2 = 0
    CycloSum u(4);
    u.add(1);
    CHECK_FALSE(u.is_zero());
    // zeta_6 relation: 1 - zeta + zeta^2 - ... ; use zeta_6^2 - zeta_6 + 1 = 0
    CycloSum v(6);
    v.add(0);
    v.add(2);
    v.add(1, -1);
    CHECK(v.is_zero());
}

TEST_CASE("gauss sum frozen examples") {
    // d=2, D=1, A=(1), Q=2, B=(1): both phases are integers, S = 1
    auto s1 = gauss_sum(RationalPoint(2, 1, {1}, {1}, 2));
    CHECK(std::abs(s1.value() - std::complex<double>(1.0, 0.0)) < 1e-14);

    // A=(1), Q=3, B=(0): classical quadratic magnitude 3^{-1/2}
    auto s2 = gauss_sum(RationalPoint(2, 1, {1}, {0}, 3));
    CHECK(std::abs(s2.value()) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    // Q=1: empty phase
    auto s3 = gauss_sum(RationalPoint(2, 1, {0}, {0}, 1));
    CHECK(std::abs(s3.value() - std::complex<double>(1.0, 0.0)) < 1e-14);
}

TEST_CASE("gauss sum magnitude and periodicity") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + static_cast<int>(rng.uniform_int(0, 1));
        int D = 1 + static_cast<int>(rng.uniform_int(0, 1));
        long long Q = rng.uniform_int(1, D == 2 ? 12 : 40);
        auto gamma = index_set(d, D);
        std::vector<long long> A(gamma.size()), B(static_cast<size_t>(D));
        for (auto& a : A) a = rng.uniform_int(0, Q - 1);
        for (auto& b : B) b = rng.uniform_int(0, Q - 1);
        RationalPoint pt(d, D, A, B, Q);
        auto S = gauss_sum(pt);
        CHECK(std::abs(S.value()) <= 1.0 + 1e-12);

        // shifting any numerator by Q leaves the sum exactly unchanged
        RationalPoint shifted = pt;
        shifted.A[0] += Q;
        if (!shifted.B.empty()) shifted.B[0] -= Q;
        auto S2 = gauss_sum(shifted);
        CHECK(S.terms.equals(S2.terms));
    }
}

TEST_CASE("vanishing lemma frozen examples") {
    // A=(2), Q=4, B=(1): gcd(A,Q) = 2, sum i - 1 - i + 1 = 0 exactly
    auto v1 = check_vanishing(RationalPoint(2, 1, {2}, {1}, 4));
    CHECK(v1.should_vanish);
    CHECK(v1.is_zero);
    CHECK(v1.pass);
    CHECK(v1.abs_value < 1e-14);

    // A=(1), Q=4, B=(1): coprime, no claim
    auto v2 = check_vanishing(RationalPoint(2, 1, {1}, {1}, 4));
    CHECK_FALSE(v2.should_vanish);
    CHECK(v2.pass);

    // D=2, Q=9: all A divisible by 3, one B coprime
    auto v3 = check_vanishing(RationalPoint(2, 2, {3, 6, 3}, {1, 3}, 9));
    CHECK(v3.should_vanish);
    CHECK(v3.is_zero);

    // fully common divisor violates the hypothesis
    CHECK_THROWS_AS(check_vanishing(RationalPoint(2, 1, {2}, {2}, 4)), PreconditionError);
}

TEST_CASE("vanishing lemma exhaustive at small Q") {
    for (long long Q = 2; Q <= 10; ++Q)
        for (long long A = 1; A <= Q; ++A)
            for (long long B = 1; B <= Q; ++B) {
                RationalPoint pt(2, 1, {A}, {B}, Q);
                if (pt.gcd_AB_Q() != 1) continue;
                auto v = check_vanishing(pt);
                CHECK(v.pass);
            }
}

TEST_CASE("recovery identity frozen example") {
    // Q=2, A=(1), n=3: lhs = e(-9/2) = -1
    long long n[1] = {3};
    auto r = recovery_identity(RationalPoint(2, 1, {1}, {0}, 2), std::span<const long long>(n, 1));
    CHECK(r.exact_equal);
    CHECK(std::abs(r.lhs - std::complex<double>(-1.0, 0.0)) < 1e-14);

    long long n0[1] = {5};
    auto r1 = recovery_identity(RationalPoint(2, 1, {0}, {0}, 1), std::span<const long long>(n0, 1));
    CHECK(r1.exact_equal);
    CHECK(std::abs(r1.lhs - std::complex<double>(1.0, 0.0)) < 1e-14);
}

TEST_CASE("recovery identity exhaustive Q <= 12") {
    for (long long Q = 1; Q <= 12; ++Q)
        for (long long A = 1; A <= Q; ++A)
            for (long long nv = -20; nv <= 20; nv += 5) {
                long long n[1] = {nv};
                auto r = recovery_identity(RationalPoint(2, 1, {A}, {0}, Q),
                                           std::span<const long long>(n, 1));
                CHECK(r.exact_equal);
                CHECK(r.abs_diff < 1e-12);
            }
}

TEST_CASE("recovery identity in two dimensions") {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        long long Q = rng.uniform_int(2, 6);
        auto gamma = index_set(2, 2);
        std::vector<long long> A(gamma.size());
        for (auto& a : A) a = rng.uniform_int(0, Q - 1);
        long long n[2] = {rng.uniform_int(-10, 10), rng.uniform_int(-10, 10)};
        auto r = recovery_identity(RationalPoint(2, 2, A, {0, 0}, Q),
                                   std::span<const long long>(n, 2));
        CHECK(r.exact_equal);
    }
}

TEST_CASE("orthogonality") {
    long long x1[1] = {3};
    auto r1 = orthogonality(3, std::span<const long long>(x1, 1));
    CHECK(r1.divisible);
    CHECK(r1.exact_indicator);
    CHECK(std::abs(r1.value - std::complex<double>(1.0, 0.0)) < 1e-14);

    long long x2[1] = {1};
    auto r2 = orthogonality(3, std::span<const long long>(x2, 1));
    CHECK_FALSE(r2.divisible);
    CHECK(r2.exact_indicator);
    CHECK(std::abs(r2.value) < 1e-14);

    long long x3[1] = {7};
    auto r3 = orthogonality(1, std::span<const long long>(x3, 1));
    CHECK(r3.divisible);
    CHECK(r3.exact_indicator);

    for (long long Q = 2; Q <= 64; Q += 7)
        for (long long x = -3; x <= 3; ++x) {
            long long xv[1] = {x};
            CHECK(orthogonality(Q, std::span<const long long>(xv, 1)).exact_indicator);
        }

    // two dimensions: componentwise divisibility required
    long long y[2] = {4, 6};
    CHECK(orthogonality(2, std::span<const long long>(y, 2)).divisible);
    long long z[2] = {4, 5};
    auto rz = orthogonality(2, std::span<const long long>(z, 2));
    CHECK_FALSE(rz.divisible);
    CHECK(rz.exact_indicator);
}

TEST_CASE("diagonal kernel density, equal phases") {
    // A = A': the v = 0 average is exactly 1
    RationalPoint a(2, 1, {1}, {0}, 7);
    auto r = kernel_K0_density(a, a, 0.9, 1 << 20);
    CHECK(r.max_value == doctest::Approx(1.0));
    CHECK(r.exceptional_density > 0.0);  // at least the diagonal shift
}

TEST_CASE("diagonal kernel density, prime modulus") {
    // A=(1), A'=(2), prime Q: every shifted average is a quadratic Gauss
    // sum of magnitude exactly Q^{-1/2}
    for (long long Q : {7, 11, 13}) {
        RationalPoint a(2, 1, {1}, {0}, Q), b(2, 1, {2}, {0}, Q);
        auto r = kernel_K0_density(a, b, 2.0 / std::sqrt(static_cast<double>(Q)), 1 << 20);
        CHECK(r.exceptional_density == 0.0);
        CHECK(r.max_value == doctest::Approx(1.0 / std::sqrt(static_cast<double>(Q))).epsilon(1e-10));
    }
}

TEST_CASE("reduced rational phases have large norm at scale Q") {
    // N_Q(P_{A/Q}) >= 2^{s-1} when Q ~ 2^s and the fraction is reduced
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        long long Q = rng.uniform_int(3, 64);
        long long A = rng.uniform_int(1, Q - 1);
        if (gcd_ll(A, Q) != 1) continue;
        Poly P = Poly::monomial_exact(1, MultiIndex({2}), Rational(A, Q));
        auto cn = coeff_norm_exact(P, {Q});
        int s = 1;
        while ((1LL << s) < Q) ++s;  // Q ~ 2^s means 2^{s-1} <= Q < 2^s
        CHECK(cn.norm() >= std::ldexp(1.0, s - 1) * 0.999);
    }
}

TEST_CASE("budget guards") {
    CHECK_THROWS_AS(gauss_sum(RationalPoint(2, 2, {1, 1, 1}, {0, 0}, 3000), 1 << 10), BudgetError);
    RationalPoint a(2, 1, {1}, {0}, 997);
    CHECK_THROWS_AS(kernel_K0_density(a, a, 0.5, 1 << 10), BudgetError);
}
