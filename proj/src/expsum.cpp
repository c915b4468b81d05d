#include "oscsum/expsum.hpp"

#include <algorithm>
#include <cmath>

#include "oscsum/numeric.hpp"
#include "oscsum/parallel.hpp"
#include "oscsum/quadrature.hpp"

namespace oscsum {

double fejer(double K, long long s) {
    if (!(K > 0.0)) throw PreconditionError("fejer: K > 0 required");
    double t = 1.0 - std::abs(static_cast<double>(s)) / K;
    return t > 0.0 ? t / K : 0.0;
}

namespace {

// iterate prog points with flat index in [lo, hi)
template <class F>
void walk_range(const Progression& prog, long long lo, long long hi, F&& f) {
    const int D = prog.dim();
    std::vector<long long> idx(D), pt = prog.point_at(lo);
    long long rem = lo;
    for (int i = D - 1; i >= 0; --i) {
        idx[i] = rem % prog.axes[i].count;
        rem /= prog.axes[i].count;
    }
    for (long long flat = lo; flat < hi; ++flat) {
        f(pt);
        for (int i = D - 1; i >= 0; --i) {
            if (++idx[i] < prog.axes[i].count) {
                pt[i] += prog.axes[i].gap;
                break;
            }
            idx[i] = 0;
            pt[i] = prog.axes[i].start;
        }
    }
}

}  // namespace

SumReport exp_sum(const Poly& P, long long k, const Progression& prog, const Amplitude& phi,
                  int partitions) {
    if (prog.dim() != P.dim()) throw UsageError("exp_sum: dimension mismatch");
    const long long n = prog.size();
    const int parts = static_cast<int>(std::min<long long>(std::max(partitions, 1), std::max<long long>(n, 1)));

    std::vector<KahanCSum> partial(parts);
    parallel_for(parts, [&](long long p) {
        long long lo = n * p / parts, hi = n * (p + 1) / parts;
        KahanCSum acc;
        walk_range(prog, lo, hi, [&](std::span<const long long> pt) {
            double ph = P.phase_mod1(pt, k);
            acc.add(cis_unit(ph) * phi.phi(pt));
        });
        partial[p] = acc;
    });

    KahanCSum total;
    for (const auto& acc : partial) total.add(acc.value());

    SumReport rep;
    rep.n_terms = n;
    rep.normalization = prog.normalization();
    rep.partitions = parts;
    rep.value = total.value() / rep.normalization;
    return rep;
}

DecayTable verify_sum_decay(int d, int D, int s_max, double R, int trials, long long draw_budget,
                            Rng rng, long long k) {
    if (trials < 1) throw PreconditionError("verify_sum_decay: trials >= 1 required");
    auto gamma = index_set(d, D);
    ScaleVec scale = ScaleVec::cubic(R, D);

    // One uniform stream classified into cells; equivalent to per-cell
    // rejection sampling but shares the expensive norm evaluations.
    std::vector<std::vector<Poly>> samples(static_cast<size_t>(s_max) + 1);
    DecayTable table;
    auto all_full = [&] {
        for (int s = 1; s <= s_max; ++s)
            if (static_cast<int>(samples[s].size()) < trials) return false;
        return true;
    };
    for (long long draw = 0; draw < draw_budget && !all_full(); ++draw) {
        std::vector<Poly::Term> ts;
        for (const auto& a : gamma) ts.push_back({a, rng.uniform(), std::nullopt});
        Poly P(D, std::move(ts));
        auto cn = coeff_norm(P, scale);
        ++table.draws_used;
        if (cn.zero || cn.s0 < 1 || cn.s0 > s_max) continue;
        if (static_cast<int>(samples[cn.s0].size()) < trials) samples[cn.s0].push_back(std::move(P));
    }

    std::vector<long long> box(static_cast<size_t>(D), static_cast<long long>(R));
    Progression prog = Progression::full_box(box);
    Amplitude one = Amplitude::one();

    for (int s = 1; s <= s_max; ++s) {
        DecayCell cell;
        cell.s = s;
        cell.samples = static_cast<long long>(samples[s].size());
        std::vector<double> abses(samples[s].size());
        parallel_for(static_cast<long long>(samples[s].size()), [&](long long i) {
            abses[i] = std::abs(exp_sum(samples[s][i], k, prog, one).value);
        });
        if (!abses.empty()) {
            std::sort(abses.begin(), abses.end());
            cell.median_abs = abses[abses.size() / 2];
            cell.max_abs = abses.back();
        }
        table.cells.push_back(cell);
    }

    // least squares of log2(max|sum|) against s over populated cells
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& c : table.cells) {
        if (c.samples < trials || c.max_abs <= 0.0) continue;
        double x = c.s, y = std::log2(c.max_abs);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    table.populated = n;
    if (n >= 2) {
        double denom = n * sxx - sx * sx;
        double slope = (n * sxy - sx * sy) / denom;
        table.theta_hat = -slope;
        double mean_y = sy / n, mean_x = sx / n;
        double ss_res = 0;
        for (const auto& c : table.cells) {
            if (c.samples < trials || c.max_abs <= 0.0) continue;
            double pred = mean_y + slope * (c.s - mean_x);
            double r = std::log2(c.max_abs) - pred;
            ss_res += r * r;
        }
        if (n > 2) table.theta_stderr = std::sqrt(ss_res / (n - 2) / (sxx - sx * sx / n));
    }
    return table;
}

MeanValueCheck small_norm_mean_value(const Poly& P, long long k, const Progression& prog,
                                     const Amplitude& phi, double C) {
    std::vector<double> radii;
    for (const auto& ax : prog.axes) radii.push_back(static_cast<double>(ax.box));
    auto cn = coeff_norm(P.scaled_int(k), ScaleVec(radii));
    if (!cn.zero && cn.s0 > 0)
        throw PreconditionError("small_norm_mean_value: N_R(kP) must be <= 1");

    auto rep = exp_sum(P, k, prog, phi);
    KahanSum mean;
    prog.for_each([&](long long, std::span<const long long> pt) { mean.add(phi.phi(pt)); });
    double phi_mean = mean.value() / rep.normalization;

    MeanValueCheck out;
    out.norm_kP = cn.zero ? 0.0 : cn.norm();
    out.deviation = std::abs(rep.value - std::complex<double>(phi_mean, 0.0));
    out.bound = C * out.norm_kP;
    out.pass = out.deviation <= out.bound + 1e-12;
    return out;
}

namespace {

// enumerate v in [-R, R]^D; calls f(v)
template <class F>
void box_walk(int D, long long R, F&& f) {
    std::vector<long long> v(static_cast<size_t>(D), -R);
    for (;;) {
        f(std::span<const long long>(v));
        int i = D - 1;
        while (i >= 0 && v[i] == R) {
            v[i] = -R;
            --i;
        }
        if (i < 0) break;
        ++v[i];
    }
}

}  // namespace

SublevelCount sublevel_small_norm(const Poly& P, double R, long long A, double B, double theta,
                                  long long budget) {
    const int D = P.dim();
    long long Ri = static_cast<long long>(R);
    double points = std::pow(2.0 * Ri + 1, D);
    if (points > static_cast<double>(budget))
        throw BudgetError("sublevel_small_norm: box too large, use a smaller instance");
    if (B < 100.0) throw PreconditionError("sublevel_small_norm: B >= 100 required");
    if (A < 1) throw PreconditionError("sublevel_small_norm: A >= 1 required");

    auto cn = coeff_norm(P, ScaleVec::cubic(R, D));
    if (cn.zero || cn.norm() < 2.0)
        throw PreconditionError("sublevel_small_norm: requires N_R(P) >= 2");
    double norm = cn.norm();
    if (static_cast<double>(A) > std::pow(norm, theta) + 1e-9)
        throw PreconditionError("sublevel_small_norm: need A <= N_R(P)^theta");

    long long count = 0;
    double invB = 1.0 / B;
    box_walk(D, Ri, [&](std::span<const long long> v) {
        double pv = P.phase_mod1(v);
        for (long long q = 1; q <= A; ++q) {
            if (torus_norm(static_cast<double>(q) * pv) <= invB) {
                ++count;
                break;
            }
        }
    });

    SublevelCount out;
    out.count = count;
    out.norm = norm;
    out.rhs = std::pow(R, D) * static_cast<double>(A) *
              (std::pow(norm, -theta) + std::pow(B, -theta) + std::pow(R, -theta));
    out.ratio = static_cast<double>(count) / out.rhs;
    return out;
}

SublevelLargeCount sublevel_large_norm(const Poly& P, double R, double kappa, double eta,
                                       long long budget) {
    const int D = P.dim();
    long long Ri = static_cast<long long>(R);
    double points = std::pow(2.0 * Ri + 1, D);
    if (points > static_cast<double>(budget))
        throw BudgetError("sublevel_large_norm: box too large, use a smaller instance");

    auto cn = coeff_norm(P, ScaleVec::cubic(R, D));
    double norm = cn.zero ? 0.0 : cn.norm();
    if (norm < std::pow(R, eta))
        throw PreconditionError("sublevel_large_norm: requires N_R(P) >= R^eta");

    long long qmax = std::max<long long>(1, static_cast<long long>(std::pow(R, kappa)));
    double thresh = std::pow(R, kappa - 1.0);
    long long count = 0;
    box_walk(D, Ri, [&](std::span<const long long> v) {
        double pv = P.phase_mod1(v);
        for (long long q = 1; q <= qmax; ++q) {
            if (torus_norm(static_cast<double>(q) * pv) <= thresh) {
                ++count;
                break;
            }
        }
    });

    SublevelLargeCount out;
    out.count = count;
    out.norm = norm;
    out.density = static_cast<double>(count) / std::pow(R, D);
    out.kappa0 = -std::log(std::max(out.density, 1e-300)) / std::log(R);
    return out;
}

OscIntegralResult oscillatory_integral(const Poly& P, double C, long long max_nodes) {
    const int D = P.dim();
    if (D > 2) throw BudgetError("oscillatory_integral: D <= 2 at desk scale");
    double norm1 = P.weighted_coeff_sum(1.0);
    long long per_axis = std::max<long long>(64, static_cast<long long>(std::ceil(64.0 * (1.0 + norm1))));
    double total = (D == 1) ? static_cast<double>(per_axis)
                            : static_cast<double>(per_axis) * static_cast<double>(per_axis);
    if (total > static_cast<double>(max_nodes)) throw BudgetError("oscillatory_integral: quadrature budget exceeded");

    std::complex<double> val;
    if (D == 1) {
        val = integrate_c1(
            [&](double t) {
                double x[1] = {t};
                return cis(P.eval(std::span<const double>(x, 1)));
            },
            0.0, 1.0, per_axis);
    } else {
        val = integrate_c2(
            [&](double t1, double t2) {
                double x[2] = {t1, t2};
                return cis(P.eval(std::span<const double>(x, 2)));
            },
            0.0, 1.0, 0.0, 1.0, per_axis);
    }

    int d = std::max(P.degree(), 1);
    OscIntegralResult out;
    out.abs_integral = std::abs(val);
    out.bound = C * std::pow(1.0 + norm1, -1.0 / d);
    out.ratio = out.abs_integral / out.bound;
    out.nodes_per_axis = per_axis;
    return out;
}

ContinuousSublevelResult continuous_sublevel(const Poly& P, double eps, long long grid_per_axis,
                                             double C) {
    const int D = P.dim();
    if (D > 2) throw BudgetError("continuous_sublevel: D <= 2 at desk scale");
    double norm1 = P.weighted_coeff_sum(1.0);
    if (!(norm1 > 0.0)) throw PreconditionError("continuous_sublevel: ||P|| > 0 required");

    long long n = grid_per_axis;
    long long hits = 0;
    if (D == 1) {
        for (long long i = 0; i < n; ++i) {
            double t = (i + 0.5) / n;
            double x[1] = {t};
            if (std::abs(P.eval(std::span<const double>(x, 1))) <= eps) ++hits;
        }
    } else {
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) {
                double x[2] = {(i + 0.5) / n, (j + 0.5) / n};
                if (std::abs(P.eval(std::span<const double>(x, 2))) <= eps) ++hits;
            }
    }

    int d = std::max(P.degree(), 1);
    ContinuousSublevelResult out;
    out.measure = static_cast<double>(hits) / std::pow(static_cast<double>(n), D);
    out.bound = C * std::pow(eps / norm1, 1.0 / d);
    out.ratio = out.measure / out.bound;
    return out;
}

double fejer_majorization_margin(double B, int grid_n) {
    // 1{||b|| <= 1/B} <= (pi^2/4) * sum_{|k| < B/2} mu_{B/2}(k) e(k b);
    // the Fejer hump at scale B/2 keeps a (2/pi)^2 floor on ||b|| <= 1/B.
    double K = B / 2.0;
    long long kmax = static_cast<long long>(std::ceil(K));
    double worst = 1e300;
    for (int i = 0; i < grid_n; ++i) {
        double beta = static_cast<double>(i) / grid_n;
        double indicator = torus_norm(beta) <= 1.0 / B ? 1.0 : 0.0;
        KahanSum fsum;
        for (long long k = -kmax; k <= kmax; ++k)
            fsum.add(fejer(K, k) * cis_unit(frac(k * beta)).real());
        double rhs = (M_PI * M_PI / 4.0) * fsum.value();
        worst = std::min(worst, rhs - indicator);
    }
    return worst;
}

}  // namespace oscsum
