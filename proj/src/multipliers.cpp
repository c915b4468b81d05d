#include "oscsum/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "oscsum/numeric.hpp"
#include "oscsum/quadrature.hpp"

namespace oscsum {

double chi_window(int s, double rho) { return std::pow(2.0, -std::pow(2.0, 10.0 * rho * s)); }

namespace {
// C^3 smoothstep, 0 -> 1 over [0, 1]
double smoothstep4(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * u * (35.0 - 84.0 * u + 70.0 * u * u - 20.0 * u * u * u);
}
}  // namespace

double chi_s(std::span<const double> beta_offset, int s, double rho) {
    double w = chi_window(s, rho);
    double prod = 1.0;
    for (double b : beta_offset) {
        double t = std::abs(b);
        if (t >= 10.0 * w) return 0.0;
        if (t <= w) continue;
        prod *= 1.0 - smoothstep4((t - w) / (9.0 * w));
    }
    return prod;
}

std::complex<double> multiplier_m(int j, const Poly& lambda, std::span<const double> beta,
                                  const DyadicKernelFamily& fam, long long budget) {
    const int D = fam.dim();
    if (static_cast<int>(beta.size()) != D || lambda.dim() != D)
        throw UsageError("multiplier_m: dimension mismatch");
    long long rad = 1LL << j;
    double pts = std::pow(2.0 * rad + 1, D);
    if (pts > static_cast<double>(budget)) throw BudgetError("multiplier_m: annulus exceeds budget");

    KahanCSum acc;
    std::vector<long long> m(static_cast<size_t>(D), -rad);
    for (;;) {
        double psi = fam.psi_lattice(j, m);
        if (psi != 0.0) {
            double ph = lambda.phase_mod1(m);
            for (int i = 0; i < D; ++i) ph += frac(beta[i] * static_cast<double>(m[i]));
            acc.add(psi * cis_unit(frac(-ph)));
        }
        int i = D - 1;
        while (i >= 0 && m[i] == rad) {
            m[i] = -rad;
            --i;
        }
        if (i < 0) break;
        ++m[i];
    }
    return acc.value();
}

std::complex<double> multiplier_phi(int j, const Poly& nu, std::span<const double> beta,
                                    const DyadicKernelFamily& fam, long long max_nodes) {
    const int D = fam.dim();
    if (static_cast<int>(beta.size()) != D || nu.dim() != D)
        throw UsageError("multiplier_phi: dimension mismatch");
    double hi = std::ldexp(1.0, j), lo = std::ldexp(1.0, j - 2);

    // oscillation across the annulus bounds the node count
    double osc = nu.weighted_coeff_sum(hi);
    for (double b : beta) osc += std::abs(b) * hi;
    long long nodes = std::max<long long>(64, static_cast<long long>(64.0 * (1.0 + osc)));
    if (nodes > max_nodes) throw BudgetError("multiplier_phi: quadrature budget exceeded");

    if (D == 1) {
        auto f = [&](double t) {
            double x[1] = {t};
            double psi = fam.psi(j, std::span<const double>(x, 1));
            if (psi == 0.0) return std::complex<double>(0.0, 0.0);
            double ph = nu.eval(std::span<const double>(x, 1)) + beta[0] * t;
            return psi * cis(-ph);
        };
        return integrate_c1(f, lo, hi, nodes) + integrate_c1(f, -hi, -lo, nodes);
    }
    auto f2 = [&](double u, double v) {
        double x[2] = {u, v};
        double psi = fam.psi(j, std::span<const double>(x, 2));
        if (psi == 0.0) return std::complex<double>(0.0, 0.0);
        double ph = nu.eval(std::span<const double>(x, 2)) + beta[0] * u + beta[1] * v;
        return psi * cis(-ph);
    };
    return integrate_c2(f2, -hi, hi, -hi, hi, std::min<long long>(nodes, 4096));
}

PhiStarResult multiplier_phi_star(int j, const Poly& nu, std::span<const double> beta, double A0,
                                  const DyadicKernelFamily& fam, long long max_nodes) {
    PhiStarResult out;
    double jA0 = std::pow(static_cast<double>(j), A0);
    for (const auto& t : nu.terms()) {
        double cap = jA0 * std::ldexp(1.0, -j * t.alpha.degree());
        if (std::abs(t.coeff) > cap) {
            out.cutoff_zero = true;
            return out;
        }
    }
    out.value = multiplier_phi(j, nu, beta, fam, max_nodes);
    return out;
}

namespace {

// integer candidates a with |x - a/Q| <= win (unwrapped)
std::vector<long long> window_numerators(double x, long long Q, double win) {
    std::vector<long long> out;
    long long lo = static_cast<long long>(std::ceil((x - win) * static_cast<double>(Q) - 1e-12));
    long long hi = static_cast<long long>(std::floor((x + win) * static_cast<double>(Q) + 1e-12));
    for (long long a = lo; a <= hi; ++a) out.push_back(a);
    return out;
}

}  // namespace

AssembleLResult assemble_L_s(int j, std::span<const double> lambda, std::span<const double> beta,
                             int d, int D, int s, double A0, double rho,
                             const DyadicKernelFamily& fam) {
    auto gamma = index_set(d, D);
    if (lambda.size() != gamma.size() || static_cast<int>(beta.size()) != D)
        throw UsageError("assemble_L_s: dimension mismatch");

    double jA0 = std::pow(static_cast<double>(j), A0);
    double w10 = 10.0 * chi_window(s, rho);
    AssembleLResult out;

    long long q_lo = 1LL << (s - 1), q_hi = (1LL << s) - 1;  // Q ~ 2^s
    for (long long Q = q_lo; Q <= q_hi; ++Q) {
        // per-coefficient numerator windows
        std::vector<std::vector<long long>> acands(gamma.size());
        bool empty = false;
        for (size_t i = 0; i < gamma.size(); ++i) {
            double win = jA0 * std::ldexp(1.0, -j * gamma[i].degree());
            acands[i] = window_numerators(lambda[i], Q, win);
            if (acands[i].empty()) empty = true;
        }
        std::vector<std::vector<long long>> bcands(static_cast<size_t>(D));
        for (int i = 0; i < D && !empty; ++i) {
            bcands[i] = window_numerators(beta[i], Q, w10);
            if (bcands[i].empty()) empty = true;
        }
        if (empty) continue;

        // odometer over the (typically singleton) candidate product
        std::vector<size_t> ai(gamma.size(), 0), bi(static_cast<size_t>(D), 0);
        for (;;) {
            std::vector<long long> A(gamma.size()), B(static_cast<size_t>(D));
            std::vector<double> nu(gamma.size()), boff(static_cast<size_t>(D));
            for (size_t i = 0; i < gamma.size(); ++i) {
                A[i] = acands[i][ai[i]];
                nu[i] = lambda[i] - static_cast<double>(A[i]) / static_cast<double>(Q);
            }
            for (int i = 0; i < D; ++i) {
                B[i] = bcands[static_cast<size_t>(i)][bi[static_cast<size_t>(i)]];
                boff[static_cast<size_t>(i)] =
                    beta[i] - static_cast<double>(B[i]) / static_cast<double>(Q);
            }
            // canonical enumeration: jointly reduced tuples only, so each
            // rational pair appears at exactly one denominator class
            RationalPoint pt(d, D, A, B, Q);
            double chi = pt.gcd_AB_Q() == 1 ? chi_s(boff, s, rho) : 0.0;
            if (chi > 0.0) {
                // phase tuples that are unreduced in A alone have exactly
                // vanishing sums and never count as contributors
                auto S = gauss_sum(pt);
                if (!S.is_zero_exact()) {
                    std::vector<Poly::Term> terms;
                    for (size_t i = 0; i < gamma.size(); ++i)
                        if (nu[i] != 0.0) terms.push_back({gamma[i], nu[i], std::nullopt});
                    Poly nu_poly(D, std::move(terms));
                    auto phistar = multiplier_phi_star(j, nu_poly, boff, A0, fam);
                    if (!phistar.cutoff_zero) {
                        ++out.contributing;
                        out.value += S.value() * phistar.value * chi;
                        if (out.contributing == 1) {
                            out.term = pt;
                            out.s_of_term = s;
                        }
                    }
                }
            }
            // advance odometer
            size_t axis = 0;
            bool carried = true;
            for (; axis < ai.size(); ++axis) {
                if (++ai[axis] < acands[axis].size()) {
                    carried = false;
                    break;
                }
                ai[axis] = 0;
            }
            if (carried) {
                size_t bx = 0;
                for (; bx < bi.size(); ++bx) {
                    if (++bi[bx] < bcands[bx].size()) {
                        carried = false;
                        break;
                    }
                    bi[bx] = 0;
                }
            }
            if (carried) break;
        }
    }
    return out;
}

AssembleLResult assemble_L(int j, std::span<const double> lambda, std::span<const double> beta,
                           int d, int D, double A0, double rho, int s_max,
                           const DyadicKernelFamily& fam) {
    AssembleLResult out;
    double jA0 = std::pow(static_cast<double>(j), A0);
    for (int s = 1; s <= s_max; ++s) {
        if (std::ldexp(1.0, s) > jA0) break;
        auto part = assemble_L_s(j, lambda, beta, d, D, s, A0, rho, fam);
        out.value += part.value;
        out.contributing += part.contributing;
        if (part.contributing > 0 && !out.term) {
            out.term = part.term;
            out.s_of_term = part.s_of_term;
        }
    }
    return out;
}

bool in_major_arc(std::span<const double> lambda, std::span<const double> beta,
                  const RationalPoint& pt, int j, double eps0) {
    auto gamma = index_set(pt.d, pt.D);
    for (size_t i = 0; i < gamma.size(); ++i) {
        double win = std::pow(2.0, (eps0 - gamma[i].degree()) * j);
        double diff = torus_norm(lambda[i] - static_cast<double>(pt.A[i]) / static_cast<double>(pt.Q));
        if (diff > win) return false;
    }
    for (int i = 0; i < pt.D; ++i) {
        double win = std::pow(2.0, (eps0 - 1.0) * j);
        double diff = torus_norm(beta[i] - static_cast<double>(pt.B[i]) / static_cast<double>(pt.Q));
        if (diff > win) return false;
    }
    return true;
}

std::optional<RationalPoint> find_major_arc(std::span<const double> lambda,
                                            std::span<const double> beta, int j, double eps0, int d,
                                            int D) {
    long long q_max = static_cast<long long>(std::pow(2.0, eps0 * j));
    auto gamma = index_set(d, D);
    for (long long Q = 1; Q <= std::max<long long>(1, q_max); ++Q) {
        std::vector<long long> A(gamma.size()), B(static_cast<size_t>(D));
        for (size_t i = 0; i < gamma.size(); ++i)
            A[i] = static_cast<long long>(std::llround(lambda[i] * static_cast<double>(Q)));
        for (int i = 0; i < D; ++i)
            B[static_cast<size_t>(i)] =
                static_cast<long long>(std::llround(beta[i] * static_cast<double>(Q)));
        RationalPoint pt(d, D, A, B, Q);
        if (in_major_arc(lambda, beta, pt, j, eps0)) return pt;
    }
    return std::nullopt;
}

bool in_X_j(std::span<const double> lambda, int j, double A0, int d, int D, long long q_cap) {
    auto gamma = index_set(d, D);
    double jA0 = std::pow(static_cast<double>(j), A0);
    long long q_max = std::min<long long>(q_cap, static_cast<long long>(jA0));
    for (size_t i = 0; i < gamma.size(); ++i) {
        double win = jA0 * std::ldexp(1.0, -j * gamma[i].degree());
        bool ok = false;
        for (long long q = 1; q <= q_max && !ok; ++q) {
            double diff = torus_norm(lambda[i] * static_cast<double>(q)) / static_cast<double>(q);
            if (diff <= win) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

RiemannApproxCheck riemann_approx_check(int j, const RationalPoint& pt,
                                        std::span<const double> lambda,
                                        std::span<const double> beta,
                                        const DyadicKernelFamily& fam) {
    auto gamma = index_set(pt.d, pt.D);
    std::vector<double> nu(gamma.size()), boff(static_cast<size_t>(pt.D));
    double delta = 0.0;
    for (size_t i = 0; i < gamma.size(); ++i) {
        nu[i] = lambda[i] - static_cast<double>(pt.A[i]) / static_cast<double>(pt.Q);
        delta = std::max(delta, std::abs(nu[i]) * std::ldexp(1.0, j * (gamma[i].degree() - 1)));
    }
    for (int i = 0; i < pt.D; ++i) {
        boff[static_cast<size_t>(i)] =
            beta[i] - static_cast<double>(pt.B[i]) / static_cast<double>(pt.Q);
        delta = std::max(delta, std::abs(boff[static_cast<size_t>(i)]));
    }

    Poly lam_poly = poly_from_lambda(pt.d, pt.D, lambda);
    std::vector<Poly::Term> terms;
    for (size_t i = 0; i < gamma.size(); ++i)
        if (nu[i] != 0.0) terms.push_back({gamma[i], nu[i], std::nullopt});
    Poly nu_poly(pt.D, std::move(terms));

    auto m = multiplier_m(j, lam_poly, beta, fam);
    auto S = gauss_sum(pt).value();
    auto Phi = multiplier_phi(j, nu_poly, boff, fam);

    RiemannApproxCheck out;
    out.err = std::abs(m - S * Phi);
    out.q_delta = static_cast<double>(pt.Q) * delta;
    out.bound = out.q_delta;
    return out;
}

MajorArcErrorSweep major_arc_error_sweep(int d, int j_lo, int j_hi, int n_lambda, int n_beta,
                                         long long Q_max, double A0, double rho,
                                         const DyadicKernelFamily& fam, Rng rng) {
    const int D = 1;
    auto gamma = index_set(d, D);
    MajorArcErrorSweep sweep;
    int s_max = 1;
    while ((1LL << s_max) <= Q_max) ++s_max;

    // Denominators are drawn from the class Q ~ 2^3 = {4..7}: at rho = 0.1
    // this is the smallest class whose cutoff windows are narrower than the
    // shift spacing 1/(2Q), so the glued sum reduces to the single true term.
    long long q_lo = std::min<long long>(4, Q_max), q_hi = std::min<long long>(7, Q_max);
    for (int j = j_lo; j <= j_hi; ++j) {
        MajorArcErrorSweep::JCell cell;
        cell.j = j;
        for (int li = 0; li < n_lambda; ++li) {
            long long Q = rng.uniform_int(q_lo, q_hi);
            int s = ceil_log2(static_cast<double>(Q) + 0.5);  // Q ~ 2^s bucket
            double w = chi_window(s, rho);
            std::vector<long long> A(gamma.size()), B(1, 0);
            std::vector<double> lambda(gamma.size());
            double delta_j = std::ldexp(1.0, -j);
            for (int tries = 0; tries < 64; ++tries) {
                long long g = Q;
                for (size_t i = 0; i < gamma.size(); ++i) {
                    A[i] = rng.uniform_int(1, Q);
                    g = gcd_ll(g, A[i]);
                }
                if (g == 1) break;
            }
            for (size_t i = 0; i < gamma.size(); ++i) {
                double off = (2.0 * rng.uniform() - 1.0) * delta_j *
                             std::ldexp(1.0, -j * (gamma[i].degree() - 1));
                lambda[i] = frac(static_cast<double>(A[i]) / static_cast<double>(Q) + off);
            }
            for (int bi = 0; bi < n_beta; ++bi) {
                B[0] = rng.uniform_int(1, Q);
                double cap = std::min(delta_j, 0.9 * w);
                double boff = (2.0 * rng.uniform() - 1.0) * cap;
                double beta[1] = {frac(static_cast<double>(B[0]) / static_cast<double>(Q) + boff)};
                Poly lam_poly = poly_from_lambda(d, D, lambda);
                auto m = multiplier_m(j, lam_poly, std::span<const double>(beta, 1), fam);
                auto L = assemble_L(j, lambda, std::span<const double>(beta, 1), d, D, A0, rho,
                                    s_max, fam);
                cell.max_err = std::max(cell.max_err, std::abs(m - L.value));
                ++cell.samples;
            }
        }
        sweep.cells.push_back(cell);
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& c : sweep.cells) {
        if (c.max_err <= 0.0) continue;
        double x = c.j, y = std::log2(c.max_err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) sweep.rate_hat = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (size_t i = 1; i < sweep.cells.size(); ++i) {
        ++sweep.total_steps;
        if (sweep.cells[i].max_err <= sweep.cells[i - 1].max_err) ++sweep.monotone_steps;
    }
    return sweep;
}

}  // namespace oscsum
