#include "oscsum/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "oscsum/expsum.hpp"
#include "oscsum/invthm.hpp"
#include "oscsum/numeric.hpp"
#include "oscsum/parallel.hpp"

namespace oscsum {

namespace {

Poly random_poly_1d(int d, Rng& rng) {
    std::vector<Poly::Term> ts;
    for (int deg = 2; deg <= d; ++deg)
        ts.push_back({MultiIndex({deg}), rng.uniform(), std::nullopt});
    return Poly(1, std::move(ts));
}

}  // namespace

SuiteStat vdc_suite(int cases, Rng rng) {
    SuiteStat st;
    st.cases = cases;
    std::vector<double> ratios(static_cast<size_t>(cases), 0.0);
    struct Case {
        Poly P{Poly::zero(1)};
        long long I;
        long long H;
    };
    std::vector<Case> work;
    const long long Is[3] = {256, 1024, 4096};
    for (int c = 0; c < cases; ++c) {
        Case w;
        w.I = Is[c % 3];
        w.H = std::min<long long>(w.I / 8, 256);
        int fam = c % 4;
        std::vector<Poly::Term> ts;
        switch (fam) {
            case 0:  // constant phase
                ts.push_back({MultiIndex({0}), rng.uniform(), std::nullopt});
                break;
            case 1:  // linear
                ts.push_back({MultiIndex({1}), rng.uniform(), std::nullopt});
                break;
            case 2:  // quadratic
                ts.push_back({MultiIndex({2}), rng.uniform(), std::nullopt});
                break;
            default:  // full cubic
                for (int deg = 1; deg <= 3; ++deg)
                    ts.push_back({MultiIndex({deg}), rng.uniform(), std::nullopt});
        }
        w.P = Poly(1, std::move(ts));
        work.push_back(std::move(w));
    }
    parallel_for(cases, [&](long long c) {
        const Case& w = work[static_cast<size_t>(c)];
        std::vector<std::complex<double>> F;
        F.reserve(static_cast<size_t>(w.I));
        for (long long n = 1; n <= w.I; ++n) {
            long long pt[1] = {n};
            F.push_back(cis_unit(w.P.phase_mod1(std::span<const long long>(pt, 1))));
        }
        ratios[static_cast<size_t>(c)] = vdc_difference(F, static_cast<double>(w.H)).ratio;
    });
    for (double r : ratios) st.max_ratio = std::max(st.max_ratio, r);
    return st;
}

SuiteStat nonconc_suite(int cases, Rng rng) {
    SuiteStat st;
    const double Rs[4] = {512, 1024, 2048, 4096};
    const double Bs[3] = {100, 1000, 4096};
    for (int c = 0; c < cases; ++c) {
        int d = 2 + (c % 2);
        Poly P = random_poly_1d(d, rng);
        double R = Rs[c % 4];
        double B = Bs[c % 3];
        double theta = 1.0 / (2.0 * d);
        auto cn = coeff_norm(P, ScaleVec::cubic(R, 1));
        if (cn.zero || cn.norm() < 2.0) {
            ++st.skipped;
            continue;
        }
        long long A = std::max<long long>(1, std::min<long long>(8, static_cast<long long>(
                                                                        std::pow(cn.norm(), theta))));
        auto r = sublevel_small_norm(P, R, A, B, theta, 1LL << 24);
        st.max_ratio = std::max(st.max_ratio, r.ratio);
        ++st.cases;
    }
    return st;
}

SuiteStat osc_suite(int cases, Rng rng) {
    SuiteStat st;
    for (int c = 0; c < cases; ++c) {
        int D = (c % 10 == 9) ? 2 : 1;
        int d = 2 + (c % 2);
        double scale = (c % 2 == 0) ? 100.0 * rng.uniform() : 4.0 * rng.uniform();
        if (D == 2) scale = std::min(scale, 20.0);
        auto gamma = index_set(d, D);
        std::vector<Poly::Term> ts;
        for (const auto& a : gamma)
            ts.push_back({a, (2.0 * rng.uniform() - 1.0) * scale, std::nullopt});
        Poly P(D, std::move(ts));
        auto r = oscillatory_integral(P, 1.0, 1LL << 24);
        st.max_ratio = std::max(st.max_ratio, r.ratio);
        ++st.cases;
    }
    return st;
}

SuiteStat cont_sublevel_suite(int cases, Rng rng) {
    SuiteStat st;
    for (int c = 0; c < cases; ++c) {
        int D = (c % 8 == 7) ? 2 : 1;
        int d = 2 + (c % 2);
        auto gamma = index_set(d, D);
        std::vector<Poly::Term> ts;
        for (const auto& a : gamma)
            ts.push_back({a, (2.0 * rng.uniform() - 1.0) * 5.0, std::nullopt});
        Poly P(D, std::move(ts));
        if (P.is_zero()) {
            ++st.skipped;
            continue;
        }
        double norm = P.weighted_coeff_sum(1.0);
        double eps = norm * std::pow(10.0, -3.0 * rng.uniform());
        auto r = continuous_sublevel(P, eps, D == 1 ? 1 << 14 : 1 << 10, 1.0);
        st.max_ratio = std::max(st.max_ratio, r.ratio);
        ++st.cases;
    }
    return st;
}

SuiteStat taylor_suite(int cases, Rng rng) {
    SuiteStat st;
    for (int c = 0; c < cases; ++c) {
        int d = 2 + (c % 2);
        long long q = 2 + static_cast<long long>(rng.next_u64() % 11);
        long long N = 1000 + static_cast<long long>(rng.next_u64() % 9001);
        std::vector<Poly::Term> ts;
        for (int deg = 2; deg <= d; ++deg) {
            // perturbation scaled to N^{-deg} keeps the certified smallness
            // away from the vacuous half-torus regime
            double pert = (2.0 * rng.uniform() - 1.0) * 1e-3 /
                          std::pow(static_cast<double>(N), deg);
            long long a = 1 + static_cast<long long>(rng.next_u64() % static_cast<std::uint64_t>(q));
            ts.push_back({MultiIndex({deg}),
                          static_cast<double>(a) / static_cast<double>(q) + pert, std::nullopt});
        }
        Poly P(1, std::move(ts));
        double Delta = 0.0;
        for (const auto& t : P.terms()) {
            double npow = std::pow(static_cast<double>(N), t.alpha.degree());
            Delta = std::max(Delta, torus_norm(static_cast<double>(q) * t.coeff) * npow);
        }
        if (Delta == 0.0) {
            ++st.skipped;
            continue;
        }
        long long M = std::max<long long>(1, static_cast<long long>(
                                                 (0.01 + 0.2 * rng.uniform()) * static_cast<double>(N)));
        long long t0v = static_cast<long long>(rng.next_u64() % static_cast<std::uint64_t>(N / 2));
        long long t0[1] = {t0v};
        auto r = taylor_shift_check(P, q, Delta, std::span<const long long>(t0, 1), {M}, {N}, 1.0);
        if (r.vacuous) {
            ++st.skipped;
            continue;
        }
        double core = r.bound;  // C = 1
        if (core > 0.0) st.max_ratio = std::max(st.max_ratio, r.max_deviation / core);
        ++st.cases;
    }
    return st;
}

SuiteStat condense_suite(int cases, Rng rng) {
    SuiteStat st;
    for (int c = 0; c < cases; ++c) {
        long long q0 = 2 + static_cast<long long>(rng.next_u64() % 15);
        long long N = 500 + static_cast<long long>(rng.next_u64() % 1500);
        double tiny = 1e-8 * rng.uniform();
        double alpha0 = 1.0 / static_cast<double>(q0) + tiny;
        std::vector<long long> H;
        for (long long n = q0; n <= N; n += q0) H.push_back(n);
        double eps = static_cast<double>(N) * tiny + 1e-15;
        double delta = static_cast<double>(H.size()) / static_cast<double>(N);
        // needed constant at the natural q = q0
        double defect = torus_norm(static_cast<double>(q0) * alpha0);
        double unit = eps * static_cast<double>(q0) / (delta * static_cast<double>(N));
        if (unit > 0.0) st.max_ratio = std::max(st.max_ratio, defect / unit);
        ++st.cases;
    }
    return st;
}

nlohmann::ordered_json run_calibration(int cases, const RunConfig& cfg) {
    nlohmann::ordered_json rep;
    auto add = [&](const char* name, const SuiteStat& s, double frozen) {
        rep[name] = {{"cases", s.cases},
                     {"skipped", s.skipped},
                     {"max_ratio", s.max_ratio},
                     {"suggested_freeze", 2.0 * s.max_ratio},
                     {"frozen", frozen}};
    };
    // suite sizes track the acceptance run so the freeze covers it exactly
    add("vdc", vdc_suite(5 * cases, Rng(cfg.seed ^ 0x1001)), cfg.C_vdc);
    add("nonconc", nonconc_suite(cases / 2, Rng(cfg.seed ^ 0x1002)), cfg.C_nonconc);
    add("oscillatory_integral", osc_suite(cases, Rng(cfg.seed ^ 0x1003)), cfg.C_osc);
    add("continuous_sublevel", cont_sublevel_suite(cases, Rng(cfg.seed ^ 0x1004)), cfg.C_cont_sublevel);
    add("taylor", taylor_suite(cases, Rng(cfg.seed ^ 0x1005)), cfg.C_taylor);
    add("condense", condense_suite(cases, Rng(cfg.seed ^ 0x1006)), cfg.C_condense);
    return rep;
}

}  // namespace oscsum
