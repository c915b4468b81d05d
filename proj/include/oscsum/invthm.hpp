#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "oscsum/expsum.hpp"
#include "oscsum/poly.hpp"
#include "oscsum/progression.hpp"

namespace oscsum {

struct InverseCertificate {
    long long Q = 1;
    std::vector<double> defects;  // ||Q lambda_a|| * N^a per coefficient
    double max_defect = 0.0;
    double bound = 0.0;  // delta^{-C_max}
    int C_used = 0;
};

struct InverseOutcome {
    enum Kind { SmallBox, Certificate, Counterexample } kind = Counterexample;
    std::optional<InverseCertificate> cert;
    bool small_box_also = false;  // the degenerate alternative applied too
    double sum_abs = 0.0;
    std::string note;
};

// Verifier for the approximability dichotomy: given a progression sum of
// size >= delta with gaps <= 1/delta, exhaustively searches Q <= delta^{-C}
// for the denominator minimizing the worst scaled defect.  The certificate
// is preferred when both alternatives apply; a failed search reports
// "constants too small at this scale", never a disproof.
InverseOutcome inverse_verify(const Poly& P, const Progression& prog, double delta, int C_max,
                              long long q_budget = 1LL << 21);

struct VdcResult {
    double lhs_sq;  // |avg e(P)|^2
    double rhs;     // Fejer-weighted differenced averages + (H/|I|)^2
    double ratio;
};

// Two-sided evaluation of the differencing inequality for unit-modulus
// samples F(n) = e(P(n)) on an interval.
VdcResult vdc_difference(const std::vector<std::complex<double>>& F, double H);

struct TaylorShiftResult {
    double max_deviation;
    double bound;  // C * Delta * (sum M_i/N_i) * Q^{d-1}
    bool pass;
    bool vacuous;  // bound >= 1/2: nothing to test on the torus
};

// Torus deviation of P(t0 + lQ) - P(t0) over l in [-M, M]^D, against the
// certified smallness Delta of ||lambda_a Q|| N^a.
TaylorShiftResult taylor_shift_check(const Poly& P, long long Q, double Delta,
                                     std::span<const long long> t0,
                                     const std::vector<long long>& M,
                                     const std::vector<long long>& N, double C);

struct CondenseResult {
    bool found = false;
    long long q = 0;
    double defect = 0.0;
    double bound = 0.0;
    long long best_q = 0;        // closest miss when not found
    double best_defect = 0.0;
};

// From many n with ||n alpha0|| <= eps (a delta-dense subset of [N]) to a
// single q <= 1/delta with ||q alpha0|| <= C eps q / (delta N).
CondenseResult condense(double alpha0, const std::optional<Rational>& exact,
                        const std::vector<long long>& H, long long N, double eps, double delta,
                        double C);

struct RescaleResult {
    std::vector<Progression> subs;
    std::vector<std::vector<long long>> remainder;
    double remainder_fraction = 0.0;
};

// Partition into sub-progressions with gaps K sigma_i and per-axis lengths
// floor(frac * count); per-axis tails go to the remainder.  The union is an
// exact set partition of the input.
RescaleResult rescale(const Progression& prog, long long K, double frac,
                      long long budget = 1LL << 22);

struct InductionTrace {
    bool complete = false;
    std::string failed_stage;
    std::vector<std::string> stages;
    double sum_abs = 0.0;
    long long K = 0;
    std::vector<long long> H;        // shifts surviving the differenced-sum threshold
    std::vector<long long> H_prime;  // largest common-denominator bucket
    long long common_q = 0;
    struct TopCert {
        MultiIndex alpha;
        long long Q;
        double scaled_defect;  // ||Q lambda_a|| * N^a
    };
    std::vector<TopCert> certs;
};

// One pass of the differencing pipeline: shift-difference along the last
// axis, per-shift certificates on the lower-degree differences, a
// pigeonhole on their denominators, then condensation to certify every
// top-degree coefficient involving the last axis.  A demonstration
// harness, not a proof.
InductionTrace induction_demo(const Poly& P, const Progression& prog, double delta, int C_max,
                              double condense_C);

}  // namespace oscsum
