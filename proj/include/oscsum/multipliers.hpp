#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "oscsum/gauss.hpp"
#include "oscsum/kernels.hpp"
#include "oscsum/poly.hpp"
#include "oscsum/rng.hpp"

namespace oscsum {

// window width of the denominator-class cutoff: 2^{-2^{10 rho s}}
double chi_window(int s, double rho);

// Tensor smoothstep cutoff obeying the sandwich
//   1{|b_i| <= w} <= chi_s(b) <= 1{|b_i| <= 10 w}.
double chi_s(std::span<const double> beta_offset, int s, double rho);

// m_{j,lambda}(beta) = sum_m psi_j(m) e(-P_lambda(m) - beta.m) over the
// lattice annulus
std::complex<double> multiplier_m(int j, const Poly& lambda, std::span<const double> beta,
                                  const DyadicKernelFamily& fam, long long budget = 1LL << 24);

// Phi_{j,nu}(beta) = int e(-P_nu(t) - beta.t) psi_j(t) dt by composite
// quadrature with node density tied to the phase oscillation
std::complex<double> multiplier_phi(int j, const Poly& nu, std::span<const double> beta,
                                    const DyadicKernelFamily& fam, long long max_nodes = 1LL << 22);

struct PhiStarResult {
    std::complex<double> value{0.0, 0.0};
    bool cutoff_zero = false;  // some |nu_a| > j^{A0} 2^{-j|a|}
};

PhiStarResult multiplier_phi_star(int j, const Poly& nu, std::span<const double> beta, double A0,
                                  const DyadicKernelFamily& fam, long long max_nodes = 1LL << 22);

// ---- glued rational approximant ----------------------------------------------

struct AssembleLResult {
    std::complex<double> value{0.0, 0.0};
    int contributing = 0;  // window-surviving (A/Q, B/Q) tuples
    std::optional<RationalPoint> term;
    int s_of_term = 0;
};

// L^s_{j,lambda}(beta): denominators Q with 2^{s-1} <= Q < 2^s
AssembleLResult assemble_L_s(int j, std::span<const double> lambda, std::span<const double> beta,
                             int d, int D, int s, double A0, double rho,
                             const DyadicKernelFamily& fam);

// consolidated over s with 2^s <= j^{A0}, capped by s_max
AssembleLResult assemble_L(int j, std::span<const double> lambda, std::span<const double> beta,
                           int d, int D, double A0, double rho, int s_max,
                           const DyadicKernelFamily& fam);

// ---- major arcs ---------------------------------------------------------------

// |lambda_a - A_a/Q| <= 2^{(eps0-|a|) j} and |beta_i - B_i/Q| <= 2^{(eps0-1) j}
bool in_major_arc(std::span<const double> lambda, std::span<const double> beta,
                  const RationalPoint& pt, int j, double eps0);

// search over Q <= 2^{eps0 j} for a covering major arc
std::optional<RationalPoint> find_major_arc(std::span<const double> lambda,
                                            std::span<const double> beta, int j, double eps0, int d,
                                            int D);

// membership in the rational-proximity set: every coefficient within
// j^{A0} 2^{-j|a|} of a fraction with denominator <= j^{A0}
bool in_X_j(std::span<const double> lambda, int j, double A0, int d, int D, long long q_cap);

// ---- approximation error sweeps ------------------------------------------------

struct RiemannApproxCheck {
    double err;    // |m - S Phi|
    double bound;  // Q * delta
    double q_delta;
};

RiemannApproxCheck riemann_approx_check(int j, const RationalPoint& pt,
                                        std::span<const double> lambda,
                                        std::span<const double> beta,
                                        const DyadicKernelFamily& fam);

struct MajorArcErrorSweep {
    struct JCell {
        int j;
        double max_err = 0.0;
        long long samples = 0;
    };
    std::vector<JCell> cells;
    double rate_hat = 0.0;    // fitted decay exponent of max_err per unit j
    int monotone_steps = 0;   // decreasing steps among consecutive j
    int total_steps = 0;
};

// Samples lambda near small-denominator rationals (inside X_j) and betas
// inside the matching cutoff windows, then measures max |m - L| per j.
MajorArcErrorSweep major_arc_error_sweep(int d, int j_lo, int j_hi, int n_lambda, int n_beta,
                                         long long Q_max, double A0, double rho,
                                         const DyadicKernelFamily& fam, Rng rng);

}  // namespace oscsum
