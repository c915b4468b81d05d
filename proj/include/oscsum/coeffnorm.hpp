#pragma once

#include <optional>
#include <vector>

#include "oscsum/poly.hpp"

namespace oscsum {

// Result of the scale-dependent coefficient-norm search.  The norm value
// is 2^{s0}; for s0 >= 1 a witness denominator Q <= 2^{s0} attains
// sum_a ||Q lambda_a|| R^a <= 2^{s0}, and no Q <= 2^s works for any s < s0.
struct CoeffNormResult {
    bool zero = false;  // all coefficients integral: the norm degenerates
    int s0 = 0;
    std::optional<long long> witness_Q;  // present iff s0 >= 1; smallest witness
    double residual = 0.0;               // sum_a ||Q lambda_a|| R^a at the witness

    double norm() const;  // 2^{s0}
};

// Exhaustive evaluation of the stopping time.  The scan over Q never skips
// a candidate: Q runs upward and stops only once no remaining Q can beat
// the best scale found, so the returned witness is minimal at the minimal
// scale.  Boundary comparisons resolve within 1e-12 in favour of "<=".
CoeffNormResult coeff_norm(const Poly& P, const ScaleVec& R);

// Exact-rational variant; radii must be integers >= 1 and every
// coefficient of P exact.
CoeffNormResult coeff_norm_exact(const Poly& P, const std::vector<long long>& R);

// ---- structural checks -----------------------------------------------------

struct ConvexityReport {
    bool pass = true;
    std::vector<int> s_by_k;  // level per k = 0..k_max (INT_MIN marks the zero norm)
    struct Violation {
        int level;
        int k_before, k_gap, k_after;
    };
    std::vector<Violation> violations;
};

// Checks that each level set {k : N_{2^k}(P) = 2^s}, s >= 1, is a run of
// consecutive k, and that each level s <= 0 is attained at most once.
ConvexityReport check_convexity(const Poly& P, int k_max);

struct RationalLowerBoundResult {
    double n_value = 0.0;
    double q_pow_delta = 0.0;
    double ratio = 0.0;
    bool pass = false;
};

// For lambda_a = A_a/Q reduced and R_i >= Q^{1+delta}: the norm should be
// at least c * Q^delta with the calibrated constant c.
RationalLowerBoundResult check_rational_lower_bound(const std::vector<long long>& A, long long Q,
                                                    double delta, const std::vector<long long>& R,
                                                    int d, int D, double c);

struct MultiplicativityResult {
    double lhs = 0.0;  // N_R(P)
    double rhs = 0.0;  // 2^{ceil log2 k} * N_R(kP)
    bool pass = false;
};

MultiplicativityResult check_multiplicativity(const Poly& P, long long k, const ScaleVec& R);

}  // namespace oscsum
