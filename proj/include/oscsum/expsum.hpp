#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "oscsum/coeffnorm.hpp"
#include "oscsum/poly.hpp"
#include "oscsum/progression.hpp"
#include "oscsum/rng.hpp"

namespace oscsum {

// triangular weight (1/K)(1 - |s|/K)_+ ; nonnegative, unit mass over the
// integers for integer K
double fejer(double K, long long s);

struct SumReport {
    std::complex<double> value;
    long long n_terms = 0;
    double normalization = 1.0;
    int partitions = 1;
    std::string order = "graded-lex/odometer";
};

// (1/prod N_i) sum_{n in prog} e(k P(n)) phi(n); phases reduced mod 1 per
// monomial; compensated summation within a fixed number of partitions so
// the value is bitwise independent of the worker count.
SumReport exp_sum(const Poly& P, long long k, const Progression& prog, const Amplitude& phi,
                  int partitions = 16);

// ---- decay experiment -------------------------------------------------------

struct DecayCell {
    int s;
    long long samples = 0;
    double median_abs = 0.0;
    double max_abs = 0.0;
};

struct DecayTable {
    std::vector<DecayCell> cells;
    int populated = 0;          // cells holding >= `trials` samples
    double theta_hat = 0.0;     // fitted exponent of max|sum| ~ 2^{-theta s}
    double theta_stderr = 0.0;
    long long draws_used = 0;
};

// Samples the level sets {N_R(P) = 2^s} by classifying one uniform
// coefficient stream, then measures |exp_sum| with k and phi == 1 over the
// full box.  Thin cells stay under-populated and are excluded from the
// fit, never fabricated.
DecayTable verify_sum_decay(int d, int D, int s_max, double R, int trials, long long draw_budget,
                            Rng rng, long long k = 1);

struct MeanValueCheck {
    double norm_kP;    // N_R(kP), must be <= 1
    double deviation;  // |sum - mean(phi)|
    double bound;      // C * N_R(kP)
    bool pass;
};

// Second regime of the sum estimate: when N_R(kP) <= 1 the sum equals the
// amplitude mean up to O(N_R(kP)).
MeanValueCheck small_norm_mean_value(const Poly& P, long long k, const Progression& prog,
                                     const Amplitude& phi, double C);

// ---- sublevel (non-concentration) counts ------------------------------------

struct SublevelCount {
    long long count = 0;
    double rhs = 0.0;
    double ratio = 0.0;
    double norm = 0.0;  // N_R(P)
};

// |{ |v| <= R : min_{q <= A} ||q P(v)|| <= 1/B }| against
// R^D * A * (N^-theta + B^-theta + R^-theta).
SublevelCount sublevel_small_norm(const Poly& P, double R, long long A, double B, double theta,
                                  long long budget);

struct SublevelLargeCount {
    long long count = 0;
    double density = 0.0;   // count / R^D
    double kappa0 = 0.0;    // -log_R density
    double norm = 0.0;
};

// |{ |v| <= R : min_{q <= R^kappa} ||q P(v)|| <= R^{kappa-1} }| under the
// large-norm hypothesis N_R(P) >= R^eta.
SublevelLargeCount sublevel_large_norm(const Poly& P, double R, double kappa, double eta,
                                       long long budget);

// ---- continuous-side comparisons --------------------------------------------

struct OscIntegralResult {
    double abs_integral;
    double bound;   // C (1 + ||P||)^{-1/d}
    double ratio;
    long long nodes_per_axis;
};

OscIntegralResult oscillatory_integral(const Poly& P, double C, long long max_nodes);

struct ContinuousSublevelResult {
    double measure;  // grid estimate of |{ t in [0,1]^D : |P(t)| <= eps }|
    double bound;    // C (eps / ||P||)^{1/d}
    double ratio;
};

ContinuousSublevelResult continuous_sublevel(const Poly& P, double eps, long long grid_per_axis,
                                             double C);

// Pointwise check of the indicator-vs-Fejer majorization
//   1{||b|| <= 1/B} <= (pi^2/4) sum_k mu_{B/2}(k) e(k b)
// on a uniform grid of beta; returns the worst slack (negative = violation).
double fejer_majorization_margin(double B, int grid_n);

}  // namespace oscsum
