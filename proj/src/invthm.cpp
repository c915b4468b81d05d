#include "oscsum/invthm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "oscsum/numeric.hpp"
#include "oscsum/parallel.hpp"

namespace oscsum {

namespace {

// ||Q lambda_a|| per term, exact when the coefficient is exact
double term_torus_defect(const Poly::Term& t, long long Q) {
    if (t.exact) return t.exact->times_int(Q).torus_norm().to_double();
    return torus_norm(static_cast<double>(Q) * t.coeff);
}

double n_pow_alpha(const std::vector<long long>& N, const MultiIndex& a) {
    double p = 1.0;
    for (size_t i = 0; i < N.size(); ++i)
        for (int e = 0; e < a.exps[i]; ++e) p *= static_cast<double>(N[i]);
    return p;
}

}  // namespace

InverseOutcome inverse_verify(const Poly& P, const Progression& prog, double delta, int C_max,
                              long long q_budget) {
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("inverse_verify: delta in (0,1) required");
    for (const auto& ax : prog.axes)
        if (static_cast<double>(ax.gap) > 1.0 / delta + 1e-9)
            throw PreconditionError("inverse_verify: gap sizes must satisfy sigma_i <= 1/delta");

    auto rep = exp_sum(P, 1, prog, Amplitude::one());
    double sum_abs = std::abs(rep.value);
    if (sum_abs < delta)
        throw PreconditionError("inverse_verify: |normalized sum| = " + std::to_string(sum_abs) +
                                " < delta");

    double bound = std::pow(delta, -C_max);
    long long q_max = static_cast<long long>(std::min(bound, static_cast<double>(q_budget)));
    std::vector<long long> N;
    for (const auto& ax : prog.axes) N.push_back(ax.box);

    bool small_box = false;
    for (long long n : N)
        if (static_cast<double>(n) <= bound) small_box = true;

    // minimize the worst scaled defect over all denominators up to the cap
    long long best_q = 1;
    double best_val = std::numeric_limits<double>::infinity();
    const auto& terms = P.terms();
    std::vector<double> weights;
    for (const auto& t : terms) weights.push_back(n_pow_alpha(N, t.alpha));

    std::vector<double> chunk_best(16, std::numeric_limits<double>::infinity());
    std::vector<long long> chunk_q(16, 1);
    parallel_for(16, [&](long long c) {
        long long lo = 1 + q_max * c / 16, hi = q_max * (c + 1) / 16;
        double bv = std::numeric_limits<double>::infinity();
        long long bq = 1;
        for (long long Q = lo; Q <= hi; ++Q) {
            double worst = 0.0;
            for (size_t i = 0; i < terms.size(); ++i) {
                double dfx = term_torus_defect(terms[i], Q) * weights[i];
                worst = std::max(worst, dfx);
                if (worst >= bv) break;
            }
            if (worst < bv) {
                bv = worst;
                bq = Q;
                if (bv == 0.0) break;  // exact witness; smaller Q cannot appear later
            }
        }
        chunk_best[static_cast<size_t>(c)] = bv;
        chunk_q[static_cast<size_t>(c)] = bq;
    });
    for (size_t c = 0; c < chunk_best.size(); ++c) {
        // ordered reduction; ties keep the smaller denominator
        if (chunk_best[c] < best_val - 1e-15 ||
            (std::abs(chunk_best[c] - best_val) <= 1e-15 && chunk_q[c] < best_q)) {
            best_val = chunk_best[c];
            best_q = chunk_q[c];
        }
    }

    InverseOutcome out;
    out.sum_abs = sum_abs;
    out.small_box_also = small_box;
    if (best_val <= bound) {
        InverseCertificate cert;
        cert.Q = best_q;
        cert.C_used = C_max;
        cert.bound = bound;
        for (size_t i = 0; i < terms.size(); ++i)
            cert.defects.push_back(term_torus_defect(terms[i], best_q) * weights[i]);
        cert.max_defect = best_val;
        out.cert = cert;
        out.kind = InverseOutcome::Certificate;
        if (small_box) out.note = "small-box alternative also applies; certificate preferred";
        return out;
    }
    if (small_box) {
        out.kind = InverseOutcome::SmallBox;
        out.note = "some N_i <= delta^{-C_max}";
        return out;
    }
    out.kind = InverseOutcome::Counterexample;
    out.note = "no certificate with C_max = " + std::to_string(C_max) +
               "; constants too small at this scale, best Q = " + std::to_string(best_q);
    InverseCertificate best;
    best.Q = best_q;
    best.C_used = C_max;
    best.bound = bound;
    best.max_defect = best_val;
    out.cert = best;
    return out;
}

VdcResult vdc_difference(const std::vector<std::complex<double>>& F, double H) {
    const long long n = static_cast<long long>(F.size());
    if (n < 1) throw PreconditionError("vdc_difference: empty interval");
    if (!(H >= 0.0 && H <= static_cast<double>(n)))
        throw PreconditionError("vdc_difference: need 0 <= H <= |I|");

    KahanCSum avg;
    for (const auto& z : F) avg.add(z);
    double lhs = std::abs(avg.value()) / static_cast<double>(n);

    KahanSum rhs;
    long long kmax = static_cast<long long>(std::ceil(H));
    for (long long k = -kmax; k <= kmax; ++k) {
        double w = fejer(H > 0.0 ? H : 1.0, k);
        if (w == 0.0) continue;
        KahanCSum corr;
        long long lo = std::max<long long>(0, -k), hi = std::min(n, n - k);
        for (long long i = lo; i < hi; ++i) corr.add(F[static_cast<size_t>(i + k)] * std::conj(F[static_cast<size_t>(i)]));
        rhs.add(w * std::abs(corr.value()) / static_cast<double>(n));
    }
    double tail = H / static_cast<double>(n);
    VdcResult out;
    out.lhs_sq = lhs * lhs;
    out.rhs = rhs.value() + tail * tail;
    out.ratio = out.rhs > 0.0 ? out.lhs_sq / out.rhs : 0.0;
    return out;
}

TaylorShiftResult taylor_shift_check(const Poly& P, long long Q, double Delta,
                                     std::span<const long long> t0,
                                     const std::vector<long long>& M,
                                     const std::vector<long long>& N, double C) {
    const int D = P.dim();
    if (static_cast<int>(t0.size()) != D || static_cast<int>(M.size()) != D ||
        static_cast<int>(N.size()) != D)
        throw UsageError("taylor_shift_check: dimension mismatch");

    // hypothesis ||lambda_a Q|| <= Delta N^{-a}, checked first
    for (const auto& t : P.terms()) {
        double lhs = term_torus_defect(t, Q);
        double cap = Delta / n_pow_alpha(N, t.alpha);
        if (lhs > cap + 1e-15) {
            std::string a = "(";
            for (int i = 0; i < D; ++i) a += std::to_string(t.alpha.exps[i]) + (i + 1 < D ? "," : ")");
            throw PreconditionError("taylor_shift_check: ||lambda Q|| exceeds Delta N^-alpha at alpha = " + a);
        }
    }

    double mu = 0.0;
    for (int i = 0; i < D; ++i) mu += static_cast<double>(M[i]) / static_cast<double>(N[i]);
    int d = std::max(P.degree(), 1);
    double bound = C * Delta * mu * std::pow(static_cast<double>(Q), d - 1);

    // torus norm of sum_a lambda_a ((t0 + lQ)^a - t0^a), bracket exact
    double max_dev = 0.0;
    std::vector<long long> l(static_cast<size_t>(D));
    for (int i = 0; i < D; ++i) l[i] = -M[i];
    for (;;) {
        double ph = 0.0;
        for (const auto& t : P.terms()) {
            long long shifted = 1, base = 1;
            for (int i = 0; i < D; ++i)
                for (int e = 0; e < t.alpha.exps[i]; ++e) {
                    shifted *= t0[i] + l[i] * Q;
                    base *= t0[i];
                }
            long long bracket = shifted - base;
            if (t.exact) {
                long long den = t.exact->den();
                long long br = ((bracket % den) + den) % den;
                long long num = ((t.exact->num() % den) + den) % den;
                ph += static_cast<double>(static_cast<long long>(
                          (static_cast<__int128>(num) * br) % den)) /
                      static_cast<double>(den);
            } else {
                ph += frac(t.coeff * static_cast<double>(bracket));
            }
        }
        max_dev = std::max(max_dev, torus_norm(frac(ph)));
        int i = D - 1;
        while (i >= 0 && l[i] == M[i]) {
            l[i] = -M[i];
            --i;
        }
        if (i < 0) break;
        ++l[i];
    }

    TaylorShiftResult out;
    out.max_deviation = max_dev;
    out.bound = bound;
    out.vacuous = bound >= 0.5;
    out.pass = out.vacuous || max_dev <= bound + 1e-12;
    return out;
}

CondenseResult condense(double alpha0, const std::optional<Rational>& exact,
                        const std::vector<long long>& H, long long N, double eps, double delta,
                        double C) {
    if (H.empty()) throw PreconditionError("condense: empty H");
    if (static_cast<double>(H.size()) < delta * static_cast<double>(N) - 1e-9)
        throw PreconditionError("condense: |H| >= delta N violated");
    for (long long n : H) {
        double dev = exact ? exact->times_int(n).torus_norm().to_double()
                           : torus_norm(static_cast<double>(n) * alpha0);
        if (dev > eps + 1e-15)
            throw PreconditionError("condense: hypothesis ||n alpha0|| <= eps fails at n = " +
                                    std::to_string(n));
    }

    long long q_max = static_cast<long long>(std::ceil(1.0 / delta));
    CondenseResult out;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (long long q = 1; q <= q_max; ++q) {
        double defect = exact ? exact->times_int(q).torus_norm().to_double()
                              : torus_norm(static_cast<double>(q) * alpha0);
        double bound = C * eps * static_cast<double>(q) / (delta * static_cast<double>(N));
        if (defect <= bound + 1e-15) {
            out.found = true;
            out.q = q;
            out.defect = defect;
            out.bound = bound;
            return out;
        }
        double ratio = defect / static_cast<double>(q);
        if (ratio < best_ratio) {
            best_ratio = ratio;
            out.best_q = q;
            out.best_defect = defect;
        }
    }
    return out;
}

RescaleResult rescale(const Progression& prog, long long K, double frac, long long budget) {
    if (K < 1) throw PreconditionError("rescale: K >= 1 required");
    if (!(frac > 0.0 && frac <= 1.0)) throw PreconditionError("rescale: fraction in (0, 1]");
    const int D = prog.dim();

    struct Run {
        long long start, gap, count;
    };
    std::vector<std::vector<Run>> full_runs(static_cast<size_t>(D));
    std::vector<std::vector<long long>> tail_values(static_cast<size_t>(D));

    for (int i = 0; i < D; ++i) {
        const auto& ax = prog.axes[i];
        long long T = static_cast<long long>(std::floor(frac * static_cast<double>(ax.count)));
        if (T < 1)
            throw PreconditionError("rescale: target length below 1 on axis " + std::to_string(i));
        for (long long c = 0; c < std::min(K, ax.count); ++c) {
            long long cls_count = (ax.count - 1 - c) / K + 1;  // indices c, c+K, ...
            long long done = 0;
            while (done + T <= cls_count) {
                full_runs[static_cast<size_t>(i)].push_back(
                    Run{ax.start + (c + done * K) * ax.gap, ax.gap * K, T});
                done += T;
            }
            for (long long t = done; t < cls_count; ++t)
                tail_values[static_cast<size_t>(i)].push_back(ax.start + (c + t * K) * ax.gap);
        }
    }

    RescaleResult out;
    // products of full runs across axes
    std::vector<size_t> sel(static_cast<size_t>(D), 0);
    bool any_empty = false;
    for (int i = 0; i < D; ++i)
        if (full_runs[static_cast<size_t>(i)].empty()) any_empty = true;
    if (!any_empty) {
        for (;;) {
            std::vector<AxisProgression> axes;
            for (int i = 0; i < D; ++i) {
                const Run& r = full_runs[static_cast<size_t>(i)][sel[static_cast<size_t>(i)]];
                axes.push_back(AxisProgression{r.start, r.gap, r.count, prog.axes[i].box});
            }
            out.subs.emplace_back(std::move(axes));
            int i = D - 1;
            while (i >= 0 && ++sel[static_cast<size_t>(i)] == full_runs[static_cast<size_t>(i)].size()) {
                sel[static_cast<size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
        }
    }

    // remainder: points with at least one coordinate in a tail
    if (prog.size() > budget) throw BudgetError("rescale: progression too large to materialize remainder");
    long long covered = 0;
    for (const auto& s : out.subs) covered += s.size();
    prog.for_each([&](long long, std::span<const long long> p) {
        for (int i = 0; i < D; ++i) {
            const auto& tails = tail_values[static_cast<size_t>(i)];
            if (std::find(tails.begin(), tails.end(), p[i]) != tails.end()) {
                out.remainder.emplace_back(p.begin(), p.end());
                return;
            }
        }
    });
    out.remainder_fraction =
        static_cast<double>(out.remainder.size()) / static_cast<double>(prog.size());
    if (covered + static_cast<long long>(out.remainder.size()) != prog.size())
        throw std::logic_error("rescale: partition accounting mismatch");
    return out;
}

InductionTrace induction_demo(const Poly& P, const Progression& prog, double delta, int C_max,
                              double condense_C) {
    InductionTrace tr;
    const int D = prog.dim();
    const int axis = D - 1;
    const int d = P.degree();

    auto rep = exp_sum(P, 1, prog, Amplitude::one());
    tr.sum_abs = std::abs(rep.value);
    if (tr.sum_abs < delta)
        throw PreconditionError("induction_demo: |normalized sum| < delta at the start");
    tr.stages.push_back("precondition: |sum| = " + std::to_string(tr.sum_abs));

    const auto& ax = prog.axes[static_cast<size_t>(axis)];
    long long K = std::max<long long>(
        2, static_cast<long long>(0.125 * delta * static_cast<double>(ax.box) /
                                  static_cast<double>(ax.gap)));
    K = std::min(K, ax.count - 1);
    tr.K = K;
    tr.stages.push_back("differencing window K = " + std::to_string(K));

    // differenced sums per shift
    double thresh = 0.25 * delta * delta;
    std::vector<double> avg_h(static_cast<size_t>(K) + 1, 0.0);
    parallel_for(K, [&](long long hh) {
        long long h = hh + 1;
        Poly Ph = P.shift_difference(h * ax.gap, axis);
        Progression sub = prog;
        sub.axes[static_cast<size_t>(axis)].count = ax.count - h;
        avg_h[static_cast<size_t>(h)] = std::abs(exp_sum(Ph, 1, sub, Amplitude::one()).value);
    });
    for (long long h = 1; h <= K; ++h)
        if (avg_h[static_cast<size_t>(h)] >= thresh) tr.H.push_back(h);
    tr.stages.push_back("shifts over threshold " + std::to_string(thresh) + ": |H| = " +
                        std::to_string(tr.H.size()));
    if (tr.H.empty()) {
        tr.failed_stage = "differenced-sum threshold";
        return tr;
    }

    // certificates on the lower-degree differences, bucketed by denominator
    std::map<long long, std::vector<long long>> buckets;
    for (long long h : tr.H) {
        Poly Ph = P.shift_difference(h * ax.gap, axis);
        Progression sub = prog;
        sub.axes[static_cast<size_t>(axis)].count = ax.count - h;
        try {
            auto res = inverse_verify(Ph, sub, thresh, C_max);
            if (res.kind == InverseOutcome::Certificate) buckets[res.cert->Q].push_back(h);
        } catch (const PreconditionError&) {
            // shift dropped: its difference dipped back under the threshold
        }
    }
    if (buckets.empty()) {
        tr.failed_stage = "per-shift certificates";
        return tr;
    }
    auto best = buckets.begin();
    for (auto it = buckets.begin(); it != buckets.end(); ++it)
        if (it->second.size() > best->second.size()) best = it;  // ties keep smaller q
    tr.common_q = best->first;
    tr.H_prime = best->second;
    tr.stages.push_back("pigeonhole: q = " + std::to_string(tr.common_q) + " on " +
                        std::to_string(tr.H_prime.size()) + " shifts");

    // condensation per top-degree coefficient with a last-axis leg
    std::vector<long long> N;
    for (const auto& a : prog.axes) N.push_back(a.box);
    bool all_ok = true;
    for (const auto& t : P.terms()) {
        if (t.alpha.degree() != d || t.alpha.exps[axis] == 0) continue;
        long long a_d = t.alpha.exps[axis];
        // alpha0 = q * lambda_a * a_d * sigma; the per-shift certificates make
        // ||h alpha0|| small on H', and the measured maximum is the sharpest
        // valid epsilon for the condensation hypothesis
        double alpha0;
        std::optional<Rational> exact;
        if (t.exact) {
            exact = t.exact->times_int(tr.common_q * a_d * ax.gap);
            alpha0 = exact->to_double();
        } else {
            alpha0 = t.coeff * static_cast<double>(tr.common_q * a_d * ax.gap);
        }
        double eps_alpha = 0.0;
        for (long long h : tr.H_prime) {
            double dev = exact ? exact->times_int(h).torus_norm().to_double()
                               : torus_norm(static_cast<double>(h) * alpha0);
            eps_alpha = std::max(eps_alpha, dev);
        }
        double dens = static_cast<double>(tr.H_prime.size()) / static_cast<double>(K);
        try {
            auto cr = condense(alpha0, exact, tr.H_prime, K, eps_alpha, dens, condense_C);
            if (cr.found) {
                InductionTrace::TopCert cert;
                cert.alpha = t.alpha;
                cert.Q = cr.q * tr.common_q * a_d * ax.gap;
                double defect = t.exact ? t.exact->times_int(cert.Q).torus_norm().to_double()
                                        : torus_norm(static_cast<double>(cert.Q) * t.coeff);
                cert.scaled_defect = defect * n_pow_alpha(N, t.alpha);
                tr.certs.push_back(std::move(cert));
            } else {
                all_ok = false;
            }
        } catch (const PreconditionError&) {
            all_ok = false;
        }
    }
    if (tr.certs.empty() || !all_ok) {
        tr.failed_stage = tr.certs.empty() ? "condensation" : "condensation (partial)";
        return tr;
    }
    tr.complete = true;
    tr.stages.push_back("certified " + std::to_string(tr.certs.size()) + " top coefficients");
    return tr;
}

}  // namespace oscsum
