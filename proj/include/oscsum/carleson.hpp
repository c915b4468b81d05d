#pragma once

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "oscsum/coeffnorm.hpp"
#include "oscsum/kernels.hpp"
#include "oscsum/poly.hpp"
#include "oscsum/rng.hpp"

namespace oscsum {

// lattice box [0, L_1) x ... x [0, L_D), row-major flat indexing
struct LatticeBox {
    std::vector<long long> extents;

    LatticeBox() = default;
    explicit LatticeBox(std::vector<long long> e) : extents(std::move(e)) {}
    int dim() const { return static_cast<int>(extents.size()); }
    long long size() const;
    bool contains(std::span<const long long> p) const;
    long long flat(std::span<const long long> p) const;
    std::vector<long long> point(long long flat) const;
};

// draws uniform coefficient tuples and bins them by the level of
// N_{2^k}; pool[s] holds tuples with level exactly s
std::map<int, std::vector<std::vector<double>>> sample_level_pool(int d, int D, int k, int s_lo,
                                                                  int s_hi, long long draws,
                                                                  Rng& rng);

// ---- grid-discretized Carleson operator -------------------------------------

struct CarlesonApplyResult {
    std::vector<double> values;       // per lattice point
    bool grid_lower_bound = true;     // supremum restricted to the grid
    int k_max = 0;
    long long n_lambda = 0;
};

// x -> max over grid modulations and truncations k0 <= k_max of
// | sum_{k <= k0} sum_m psi_k(m) e(P_lambda(m)) f(x - m) |.
// Truncations are realized as prefix maxima of the partial sums.
CarlesonApplyResult carleson_apply(const std::vector<double>& f, const LatticeBox& box,
                                   const DyadicKernelFamily& fam,
                                   const std::vector<std::vector<double>>& lambda_grid, int d,
                                   int k_max, long long budget = 1LL << 34);

// ---- scale classification ----------------------------------------------------

struct SplitCell {
    int cls;  // 0 stationary, 1 oscillatory, 2 error
    int s;    // level when oscillatory
};

struct SplitReport {
    std::vector<std::vector<SplitCell>> cells;  // [x][k-1]
    bool interval_ok = true;
    bool partition_ok = true;
    long long n_stationary = 0, n_osc = 0, n_error = 0;
    std::map<int, long long> osc_by_s;
};

// Classifies every (x, k) by the level of N_{2^k}(P_{lambda(x)}):
// stationary when the norm is <= 1, oscillatory while 2^s <= k^{A0},
// error beyond; verifies the per-x interval structure of the level sets.
SplitReport split_As_Ek(const std::vector<std::vector<double>>& lambda_table, int d, int D,
                        int k_max, double A0);

// ---- TT* kernels -------------------------------------------------------------

// K(x, n) = sum_m e(P_lambda(x-m) - P_mu(n-m)) psi_k(x-m) psi_r(n-m)
std::complex<double> ttstar_kernel(std::span<const long long> x, std::span<const long long> n,
                                   const Poly& lambda, const Poly& mu, int k, int r,
                                   const DyadicKernelFamily& fam);

using KernelEval =
    std::function<std::complex<double>(std::span<const long long>, std::span<const long long>)>;

struct SchurRows {
    double row_sup = 0.0;    // sup_x sum_n |K|
    double col_sup = 0.0;    // sup_n sum_x |K|
    double norm_bound = 0.0; // geometric mean
};

// Absolute row/column sums over the box; rows (columns) restricted to the
// given flat indices, empty meaning all of them.
SchurRows schur_rows(const KernelEval& K, const LatticeBox& box,
                     std::span<const long long> x_samples, std::span<const long long> n_samples);

struct SchurSweepCell {
    int s;
    long long pool_size = 0;
    double row_sup = 0.0;
    double col_sup = 0.0;
};

struct SchurSweep {
    std::vector<SchurSweepCell> cells;
    int populated = 0;
    double c0_hat = 0.0;       // fitted decay of row_sup in s
    double col_sup_max = 0.0;  // should stay O(1) across s
};

// D = 1 sweep over coefficient-norm levels with sampled linearizers; rows
// sampled, columns sampled, kernels at a single scale k.
SchurSweep ttstar_schur_sweep(int d, int k, int s_lo, int s_hi, int trials, int row_samples,
                              long long pool_draws, Rng rng, const DyadicKernelFamily& fam);

struct ErrorOpResult {
    double max_ratio = 0.0;
    std::vector<double> ratios;
    long long pool_size = 0;
};

// Empirical l2 ratio of the single-scale modulated operator with
// linearizers drawn from the level set N_{2^k} = 2^s (D = 1).
ErrorOpResult error_op_norm(int d, int k, int s, int trials, long long pool_draws,
                            const DyadicKernelFamily& fam, Rng rng);

}  // namespace oscsum
