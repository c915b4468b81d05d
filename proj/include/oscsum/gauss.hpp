#pragma once

#include <complex>
#include <span>
#include <vector>

#include "oscsum/cyclotomic.hpp"
#include "oscsum/multiindex.hpp"

namespace oscsum {

// Rational coefficient point (A/Q, B/Q): phase numerators A_a indexed by
// the exponent set of (d, D), shift numerators B_i, common denominator Q.
struct RationalPoint {
    int d = 2;
    int D = 1;
    std::vector<long long> A;  // one per element of index_set(d, D), graded-lex order
    std::vector<long long> B;  // D entries
    long long Q = 1;

    RationalPoint() = default;
    RationalPoint(int d, int D, std::vector<long long> A, std::vector<long long> B, long long Q);

    long long gcd_A_Q() const;    // gcd({A_a}, Q)
    long long gcd_AB_Q() const;   // gcd({A_a} u {B_i}, Q)
    // phase numerator of P_{A/Q}(r) + (B/Q).r at an integer point, mod Q
    long long phase_numerator(std::span<const long long> r) const;
};

// Normalized complete sum Q^{-D} sum_{r in (Q)^D} e(-P_{A/Q}(r) - (B/Q).r),
// held exactly as a cyclotomic integer over Q^D.
struct GaussSum {
    long long Q = 1;
    int D = 1;
    CycloSum terms;  // unnormalized: sum of zeta_Q powers over residues

    GaussSum() : terms(1) {}
    std::complex<double> value() const;
    bool is_zero_exact() const { return terms.is_zero(); }
    double abs() const { return std::abs(value()); }
};

GaussSum gauss_sum(const RationalPoint& pt, long long residue_budget = 1LL << 22);

struct VanishingCheck {
    bool should_vanish = false;  // gcd({A}, Q) > 1 with gcd({A} u {B}, Q) = 1
    bool is_zero = false;        // exact
    double abs_value = 0.0;
    bool pass = true;
};

VanishingCheck check_vanishing(const RationalPoint& pt);

struct RecoveryCheck {
    std::complex<double> lhs;  // sum_B S(A/Q, B/Q) e((B/Q).n)
    std::complex<double> rhs;  // e(-P_{A/Q}(n))
    bool exact_equal = false;
    double abs_diff = 0.0;
};

// sum over shift numerators recovers the pure phase at any integer point
RecoveryCheck recovery_identity(const RationalPoint& pt, std::span<const long long> n);

// Q^{-D} sum_{B in (Q)^D} e((B/Q).x) -- exactly 1 if Q | x componentwise,
// else exactly 0.
struct OrthogonalityResult {
    std::complex<double> value;
    bool exact_indicator;  // value is exactly the divisibility indicator
    bool divisible;
};

OrthogonalityResult orthogonality(long long Q, std::span<const long long> x);

// Diagonal correlation of two rational phases: for every shift v in (Q)^D,
// W(v) = |Q^{-D} sum_r e(-P_{A/Q}(v+r) + P_{A'/Q}(r))|.  Reports the
// density of shifts where W exceeds the threshold and the largest W off
// that exceptional set.
struct KernelDensityResult {
    double threshold;
    double exceptional_density;
    double max_off_exceptional;
    double max_value;
    long long shifts = 0;
};

KernelDensityResult kernel_K0_density(const RationalPoint& a, const RationalPoint& a_prime,
                                      double threshold, long long budget = 1LL << 24);

}  // namespace oscsum
