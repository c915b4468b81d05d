#include "oscsum/cli_driver.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oscsum/calibrate.hpp"
#include "oscsum/carleson.hpp"
#include "oscsum/config.hpp"
#include "oscsum/expsum.hpp"
#include "oscsum/gauss.hpp"
#include "oscsum/invthm.hpp"
#include "oscsum/multipliers.hpp"
#include "oscsum/numeric.hpp"

namespace oscsum {

namespace {

using ordered_json = nlohmann::ordered_json;

Poly load_poly(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw UsageError("cannot open polynomial file " + spec.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return Poly::from_json(ss.str());
    }
    if (!spec.empty() && spec[0] == '{' && spec.find("alpha") != std::string::npos)
        return Poly::from_json(spec);
    return Poly::parse_inline(spec);
}

Progression make_progression(const std::vector<long long>& box, std::vector<long long> start,
                             std::vector<long long> gap, std::vector<long long> count) {
    std::vector<AxisProgression> axes;
    for (size_t i = 0; i < box.size(); ++i) {
        AxisProgression ax;
        ax.box = box[i];
        ax.start = i < start.size() ? start[i] : 1;
        ax.gap = i < gap.size() ? gap[i] : 1;
        ax.count = i < count.size() ? count[i]
                                    : (ax.box - ax.start) / ax.gap + 1;
        axes.push_back(ax);
    }
    return Progression(std::move(axes));
}

ordered_json poly_json(const Poly& P) { return ordered_json::parse(P.to_json()); }

struct Emitter {
    const RunConfig& cfg;
    std::string out_path;
    std::ostream& out;

    void emit(ordered_json body, const std::vector<std::string>& csv_lines = {}) {
        std::string text;
        if (cfg.format == "csv" && !csv_lines.empty()) {
            std::string s = "# oscsum-csv v1\n";
            for (const auto& l : csv_lines) s += l + "\n";
            text = s;
        } else {
            ordered_json doc;
            doc["provenance"] = ordered_json::parse(cfg.provenance_json());
            doc["report"] = std::move(body);
            text = doc.dump(2) + "\n";
        }
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw UsageError("cannot open output file " + out_path);
            f << text;
        } else {
            out << text;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

DyadicKernelFamily make_family(const std::string& kernel, int D, int j_max) {
    if (kernel == "hilbert") {
        if (D != 1) throw UsageError("hilbert kernel is one-dimensional");
        return DyadicKernelFamily(CZKernel::hilbert(), j_max);
    }
    if (kernel == "riesz") return DyadicKernelFamily(CZKernel::riesz(D), j_max);
    throw UsageError("unknown kernel '" + kernel + "' (hilbert|riesz)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"oscsum: exponential sums, coefficient norms, and discrete Carleson experiments"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags may follow the subcommand

    RunConfig cfg;
    std::string config_path, out_path;
    std::uint64_t seed = cfg.seed;
    std::string format;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--format", format, "json|csv");
    app.add_option("--out", out_path, "write report to file instead of stdout");

    // ---- coeffnorm
    auto* c_cn = app.add_subcommand("coeffnorm", "scale-dependent coefficient norm of a polynomial");
    std::string cn_poly;
    std::vector<double> cn_R;
    bool cn_exact = false;
    c_cn->add_option("--poly", cn_poly, "inline {(a):c,...} or JSON or @file")->required();
    c_cn->add_option("--R", cn_R, "per-axis radii (one value is broadcast)")->required();
    c_cn->add_flag("--exact", cn_exact, "exact rational mode (integer radii)");

    // ---- expsum
    auto* c_es = app.add_subcommand("expsum", "normalized exponential sum over a progression");
    std::string es_poly;
    long long es_k = 1;
    std::vector<long long> es_box, es_start, es_gap, es_count;
    bool es_decay = false;
    int es_d = 2, es_D = 1, es_smax = 14, es_trials = 30;
    double es_R = 16384.0;
    long long es_budget = 100000;
    c_es->add_option("--poly", es_poly, "phase polynomial");
    c_es->add_option("--k", es_k, "integer modulation multiplier");
    c_es->add_option("--box", es_box, "ambient box sizes N_i");
    c_es->add_option("--start", es_start, "per-axis progression start");
    c_es->add_option("--gap", es_gap, "per-axis progression gap");
    c_es->add_option("--count", es_count, "per-axis progression length");
    c_es->add_flag("--decay", es_decay, "run the level-set decay experiment (CSV)");
    c_es->add_option("--d", es_d, "degree for --decay");
    c_es->add_option("--D", es_D, "dimension for --decay");
    c_es->add_option("--smax", es_smax, "largest level for --decay");
    c_es->add_option("--R", es_R, "cubic radius for --decay");
    c_es->add_option("--trials", es_trials, "samples per level for --decay");
    c_es->add_option("--draw-budget", es_budget, "uniform draws for --decay");

    // ---- sublevel
    auto* c_sl = app.add_subcommand("sublevel", "non-concentration counts");
    std::string sl_mode = "small", sl_poly;
    double sl_R = 256.0, sl_B = 100.0, sl_kappa = 0.05, sl_eta = 0.3, sl_eps = 0.01;
    long long sl_A = 1, sl_res = 1024;
    c_sl->add_option("--mode", sl_mode, "small|large|continuous");
    c_sl->add_option("--poly", sl_poly)->required();
    c_sl->add_option("--R", sl_R, "box radius");
    c_sl->add_option("--A", sl_A, "denominator cap (small mode)");
    c_sl->add_option("--B", sl_B, "torus threshold 1/B (small mode)");
    c_sl->add_option("--kappa", sl_kappa, "exponent (large mode)");
    c_sl->add_option("--eta", sl_eta, "norm hypothesis exponent (large mode)");
    c_sl->add_option("--eps", sl_eps, "level (continuous mode)");
    c_sl->add_option("--resolution", sl_res, "grid per axis (continuous mode)");

    // ---- gauss
    auto* c_gs = app.add_subcommand("gauss", "complete Gauss sum S(A/Q, B/Q)");
    long long gs_Q = 1;
    int gs_d = 2, gs_D = 1;
    std::vector<long long> gs_A, gs_B;
    bool gs_table = false;
    c_gs->add_option("--Q", gs_Q)->required();
    c_gs->add_option("--A", gs_A, "phase numerators, graded-lex coefficient order");
    c_gs->add_option("--B", gs_B, "shift numerators");
    c_gs->add_option("--d", gs_d);
    c_gs->add_option("--D", gs_D);
    c_gs->add_flag("--table", gs_table, "emit the full (A, B) table as CSV");

    // ---- recovery
    auto* c_rc = app.add_subcommand("recovery", "shift-sum recovery identity / orthogonality");
    long long rc_Q = 2;
    int rc_d = 2, rc_D = 1;
    std::vector<long long> rc_A, rc_n, rc_x;
    c_rc->add_option("--Q", rc_Q)->required();
    c_rc->add_option("--A", rc_A);
    c_rc->add_option("--n", rc_n, "integer point");
    c_rc->add_option("--d", rc_d);
    c_rc->add_option("--D", rc_D);
    c_rc->add_option("--orthogonality-x", rc_x, "instead: residue orthogonality at x");

    // ---- multiplier
    auto* c_mu = app.add_subcommand("multiplier", "lattice multiplier and its glued approximant");
    int mu_j = 8, mu_d = 2, mu_D = 1;
    std::vector<double> mu_lambda, mu_beta;
    bool mu_L = false;
    std::string mu_kernel = "hilbert";
    c_mu->add_option("--j", mu_j)->required();
    c_mu->add_option("--lambda", mu_lambda)->required();
    c_mu->add_option("--beta", mu_beta)->required();
    c_mu->add_option("--d", mu_d);
    c_mu->add_option("--D", mu_D);
    c_mu->add_flag("--L", mu_L, "also assemble the rational approximant and the error");
    c_mu->add_option("--kernel", mu_kernel);

    // ---- carleson
    auto* c_ca = app.add_subcommand("carleson", "grid-discretized maximal operator");
    long long ca_box = 1024;
    int ca_jmax = 8, ca_grid = 16, ca_trials = 4, ca_d = 2;
    std::string ca_kernel = "hilbert", ca_fjson;
    c_ca->add_option("--box", ca_box, "box length");
    c_ca->add_option("--jmax", ca_jmax, "largest dyadic scale");
    c_ca->add_option("--grid", ca_grid, "modulation grid points per coefficient");
    c_ca->add_option("--trials", ca_trials, "random inputs when no --f-json");
    c_ca->add_option("--d", ca_d, "phase degree");
    c_ca->add_option("--kernel", ca_kernel);
    c_ca->add_option("--f-json", ca_fjson, "JSON array input; emits the output lattice function");

    // ---- schur
    auto* c_sc = app.add_subcommand("schur", "TT* kernel row sums across coefficient-norm levels");
    int sc_k = 6, sc_slo = 2, sc_shi = 8, sc_trials = 2, sc_rows = 24;
    long long sc_draws = 20000;
    std::string sc_kernel = "hilbert";
    c_sc->add_option("--k", sc_k, "dyadic scale");
    c_sc->add_option("--s-lo", sc_slo);
    c_sc->add_option("--s-hi", sc_shi);
    c_sc->add_option("--trials", sc_trials);
    c_sc->add_option("--rows", sc_rows, "sampled rows per trial");
    c_sc->add_option("--pool-draws", sc_draws);
    c_sc->add_option("--kernel", sc_kernel);

    // ---- invtest
    auto* c_iv = app.add_subcommand("invtest", "approximability certificate from a large sum");
    std::string iv_poly;
    double iv_delta = 0.1;
    int iv_Cmax = 6;
    std::vector<long long> iv_box, iv_start, iv_gap, iv_count;
    bool iv_demo = false;
    c_iv->add_option("--poly", iv_poly)->required();
    c_iv->add_option("--delta", iv_delta);
    c_iv->add_option("--Cmax", iv_Cmax);
    c_iv->add_option("--box", iv_box)->required();
    c_iv->add_option("--start", iv_start);
    c_iv->add_option("--gap", iv_gap);
    c_iv->add_option("--count", iv_count);
    c_iv->add_flag("--demo", iv_demo, "run the full differencing pipeline and emit its trace");

    // ---- vdc
    auto* c_vd = app.add_subcommand("vdc", "two-sided differencing inequality on an interval");
    std::string vd_poly;
    long long vd_I = 4096, vd_H = 64;
    c_vd->add_option("--poly", vd_poly)->required();
    c_vd->add_option("--I", vd_I, "interval length");
    c_vd->add_option("--H", vd_H, "differencing window");

    // ---- condense
    auto* c_cd = app.add_subcommand("condense", "many near-hits to one small denominator");
    std::string cd_alpha;
    long long cd_N = 1000, cd_mult = 0;
    double cd_eps = 1e-6, cd_delta = 0.1;
    std::vector<long long> cd_H;
    c_cd->add_option("--alpha0", cd_alpha, "frequency, decimal or p/q")->required();
    c_cd->add_option("--N", cd_N);
    c_cd->add_option("--eps", cd_eps);
    c_cd->add_option("--delta", cd_delta);
    c_cd->add_option("--H", cd_H, "explicit subset");
    c_cd->add_option("--H-multiples", cd_mult, "use multiples of this value in [N]");

    // ---- rescale
    auto* c_rs = app.add_subcommand("rescale", "partition a progression into gap-K sub-progressions");
    std::vector<long long> rs_box, rs_start, rs_gap, rs_count;
    long long rs_K = 1;
    double rs_frac = 1.0;
    c_rs->add_option("--box", rs_box)->required();
    c_rs->add_option("--start", rs_start);
    c_rs->add_option("--gap", rs_gap);
    c_rs->add_option("--count", rs_count);
    c_rs->add_option("--K", rs_K, "gap multiplier");
    c_rs->add_option("--frac", rs_frac, "target length fraction");

    // ---- calibrate
    auto* c_cl = app.add_subcommand("calibrate", "re-measure the frozen constants (fixed seed)");
    int cl_cases = 200;
    c_cl->add_option("--cases", cl_cases);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
        if (app.count("--seed")) cfg.seed = seed;
        if (!format.empty()) cfg.format = format;
        Emitter em{cfg, out_path, out};
        Rng rng(cfg.seed);

        if (app.get_subcommands().empty()) {
            out << app.help();
            return 0;
        }

        if (c_cn->parsed()) {
            Poly P = load_poly(cn_poly);
            if (cn_R.size() == 1 && P.dim() > 1) cn_R.assign(static_cast<size_t>(P.dim()), cn_R[0]);
            ordered_json rep;
            CoeffNormResult res;
            if (cn_exact) {
                std::vector<long long> Ri;
                for (double r : cn_R) Ri.push_back(static_cast<long long>(r));
                res = coeff_norm_exact(P, Ri);
            } else {
                res = coeff_norm(P, ScaleVec(cn_R));
            }
            rep["poly"] = poly_json(P);
            rep["zero"] = res.zero;
            if (!res.zero) {
                rep["s0"] = res.s0;
                rep["norm"] = res.norm();
                if (res.witness_Q) rep["witness_Q"] = *res.witness_Q;
                rep["residual"] = res.residual;
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_es->parsed()) {
            if (es_decay) {
                auto table = verify_sum_decay(es_d, es_D, es_smax, es_R, es_trials, es_budget,
                                              Rng(cfg.seed), es_k);
                std::vector<std::string> csv{"d,D,s,R,k,trials,median_abs,max_abs,bound,ratio"};
                ordered_json cells = ordered_json::array();
                for (const auto& c : table.cells) {
                    double bound = std::ldexp(1.0, -c.s);  // reference slope only
                    std::ostringstream line;
                    line << es_d << ',' << es_D << ',' << c.s << ',' << fmt(es_R) << ',' << es_k
                         << ',' << c.samples << ',' << fmt(c.median_abs) << ',' << fmt(c.max_abs)
                         << ',' << fmt(bound) << ','
                         << fmt(bound > 0 ? c.max_abs / bound : 0.0);
                    csv.push_back(line.str());
                    cells.push_back({{"s", c.s},
                                     {"samples", c.samples},
                                     {"median_abs", c.median_abs},
                                     {"max_abs", c.max_abs}});
                }
                ordered_json rep;
                rep["cells"] = cells;
                rep["populated"] = table.populated;
                rep["theta_hat"] = table.theta_hat;
                rep["theta_stderr"] = table.theta_stderr;
                rep["draws_used"] = table.draws_used;
                em.emit(std::move(rep), csv);
                return 0;
            }
            Poly P = load_poly(es_poly.empty() ? "{(2):0}" : es_poly);
            if (es_box.empty()) throw UsageError("expsum: --box required");
            auto prog = make_progression(es_box, es_start, es_gap, es_count);
            auto repv = exp_sum(P, es_k, prog, Amplitude::one(), cfg.partitions);
            ordered_json rep;
            rep["value_re"] = repv.value.real();
            rep["value_im"] = repv.value.imag();
            rep["abs"] = std::abs(repv.value);
            rep["n_terms"] = repv.n_terms;
            rep["normalization"] = repv.normalization;
            rep["partitions"] = repv.partitions;
            rep["order"] = repv.order;
            em.emit(std::move(rep));
            return 0;
        }

        if (c_sl->parsed()) {
            Poly P = load_poly(sl_poly);
            ordered_json rep;
            if (sl_mode == "small") {
                auto r = sublevel_small_norm(P, sl_R, sl_A, sl_B, cfg.theta(std::max(P.degree(), 1)),
                                             cfg.max_lattice);
                rep = {{"mode", "small"}, {"count", r.count},    {"rhs", r.rhs},
                       {"ratio", r.ratio}, {"norm", r.norm},      {"frozen_C", cfg.C_nonconc},
                       {"pass", r.ratio <= cfg.C_nonconc}};
            } else if (sl_mode == "large") {
                auto r = sublevel_large_norm(P, sl_R, sl_kappa, sl_eta, cfg.max_lattice);
                rep = {{"mode", "large"},      {"count", r.count},   {"density", r.density},
                       {"kappa0", r.kappa0},   {"norm", r.norm},     {"kappa", sl_kappa},
                       {"pass", r.kappa0 > 0.0}};
            } else if (sl_mode == "continuous") {
                auto r = continuous_sublevel(P, sl_eps, sl_res, cfg.C_cont_sublevel);
                rep = {{"mode", "continuous"}, {"measure", r.measure}, {"bound", r.bound},
                       {"ratio", r.ratio},     {"pass", r.ratio <= 1.0 + 1e-9}};
            } else {
                throw UsageError("sublevel: unknown mode " + sl_mode);
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_gs->parsed()) {
            auto gamma = index_set(gs_d, gs_D);
            if (gs_A.empty()) gs_A.assign(gamma.size(), 0);
            if (gs_B.empty()) gs_B.assign(static_cast<size_t>(gs_D), 0);
            if (gs_table) {
                std::vector<std::string> csv{"Q,A,B,re,im,abs,exact_zero"};
                std::vector<long long> A(gamma.size(), 0), B(static_cast<size_t>(gs_D), 0);
                std::function<void(size_t)> loopB = [&](size_t bi) {
                    if (bi == B.size()) {
                        RationalPoint pt(gs_d, gs_D, A, B, gs_Q);
                        auto S = gauss_sum(pt);
                        auto v = S.value();
                        std::ostringstream line;
                        line << gs_Q << ',';
                        for (size_t i = 0; i < A.size(); ++i) line << A[i] << (i + 1 < A.size() ? ';' : ',');
                        for (size_t i = 0; i < B.size(); ++i) line << B[i] << (i + 1 < B.size() ? ';' : ',');
                        line << fmt(v.real()) << ',' << fmt(v.imag()) << ',' << fmt(std::abs(v)) << ','
                             << (S.is_zero_exact() ? 1 : 0);
                        csv.push_back(line.str());
                        return;
                    }
                    for (B[bi] = 1; B[bi] <= gs_Q; ++B[bi]) loopB(bi + 1);
                };
                std::function<void(size_t)> loopA = [&](size_t ai) {
                    if (ai == A.size()) {
                        loopB(0);
                        return;
                    }
                    for (A[ai] = 1; A[ai] <= gs_Q; ++A[ai]) loopA(ai + 1);
                };
                loopA(0);
                ordered_json rep;
                rep["rows"] = csv.size() - 1;
                em.emit(std::move(rep), csv);
                return 0;
            }
            RationalPoint pt(gs_d, gs_D, gs_A, gs_B, gs_Q);
            auto S = gauss_sum(pt);
            auto v = S.value();
            ordered_json rep;
            rep["Q"] = gs_Q;
            rep["re"] = v.real();
            rep["im"] = v.imag();
            rep["abs"] = std::abs(v);
            rep["exact_zero"] = S.is_zero_exact();
            rep["gcd_A_Q"] = pt.gcd_A_Q();
            rep["gcd_AB_Q"] = pt.gcd_AB_Q();
            em.emit(std::move(rep));
            return 0;
        }

        if (c_rc->parsed()) {
            ordered_json rep;
            if (!rc_x.empty()) {
                auto r = orthogonality(rc_Q, rc_x);
                rep = {{"mode", "orthogonality"},
                       {"value_re", r.value.real()},
                       {"value_im", r.value.imag()},
                       {"divisible", r.divisible},
                       {"exact_indicator", r.exact_indicator}};
            } else {
                auto gamma = index_set(rc_d, rc_D);
                if (rc_A.empty()) rc_A.assign(gamma.size(), 1);
                if (rc_n.empty()) rc_n.assign(static_cast<size_t>(rc_D), 1);
                RationalPoint pt(rc_d, rc_D, rc_A, std::vector<long long>(rc_D, 0), rc_Q);
                auto r = recovery_identity(pt, rc_n);
                rep = {{"mode", "recovery"},
                       {"lhs_re", r.lhs.real()},
                       {"lhs_im", r.lhs.imag()},
                       {"rhs_re", r.rhs.real()},
                       {"rhs_im", r.rhs.imag()},
                       {"abs_diff", r.abs_diff},
                       {"exact_equal", r.exact_equal}};
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_mu->parsed()) {
            auto fam = make_family(mu_kernel, mu_D, mu_j);
            Poly lam = poly_from_lambda(mu_d, mu_D, mu_lambda);
            auto m = multiplier_m(mu_j, lam, mu_beta, fam, cfg.max_lattice);
            ordered_json rep;
            rep["m_re"] = m.real();
            rep["m_im"] = m.imag();
            rep["m_abs"] = std::abs(m);
            if (mu_L) {
                auto L = assemble_L(mu_j, mu_lambda, mu_beta, mu_d, mu_D, cfg.A0, cfg.rho,
                                    cfg.s_enum_max, fam);
                rep["L_re"] = L.value.real();
                rep["L_im"] = L.value.imag();
                rep["contributing"] = L.contributing;
                rep["error"] = std::abs(m - L.value);
                if (L.term) {
                    rep["term_Q"] = L.term->Q;
                    rep["term_s"] = L.s_of_term;
                }
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_ca->parsed()) {
            auto fam = make_family(ca_kernel, 1, ca_jmax);
            LatticeBox box({ca_box});
            std::vector<std::vector<double>> grid;
            for (int g = 0; g < ca_grid; ++g)
                grid.push_back({static_cast<double>(g) / static_cast<double>(ca_grid)});
            ordered_json rep;
            if (!ca_fjson.empty()) {
                std::ifstream in(ca_fjson);
                if (!in) throw UsageError("cannot open " + ca_fjson);
                nlohmann::json jf;
                in >> jf;
                std::vector<double> f = jf.get<std::vector<double>>();
                auto res = carleson_apply(f, box, fam, grid, ca_d, ca_jmax);
                rep["values"] = res.values;
                rep["grid_lower_bound"] = res.grid_lower_bound;
            } else {
                Rng local(cfg.seed);
                ordered_json trials = ordered_json::array();
                for (int t = 0; t < ca_trials; ++t) {
                    std::vector<double> f(static_cast<size_t>(ca_box));
                    double f2 = 0.0;
                    for (auto& v : f) {
                        v = 2.0 * local.uniform() - 1.0;
                        f2 += v * v;
                    }
                    auto res = carleson_apply(f, box, fam, grid, ca_d, ca_jmax);
                    double g2 = 0.0;
                    for (double v : res.values) g2 += v * v;
                    trials.push_back({{"l2_ratio", std::sqrt(g2 / f2)}});
                }
                rep["grid"] = ca_grid;
                rep["trials"] = trials;
                rep["grid_lower_bound"] = true;
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_sc->parsed()) {
            auto fam = make_family(sc_kernel, 1, std::max(sc_k, 1));
            auto sweep = ttstar_schur_sweep(2, sc_k, sc_slo, sc_shi, sc_trials, sc_rows, sc_draws,
                                            Rng(cfg.seed), fam);
            std::vector<std::string> csv{"s,pool,row_sup,col_sup"};
            ordered_json cells = ordered_json::array();
            for (const auto& c : sweep.cells) {
                std::ostringstream line;
                line << c.s << ',' << c.pool_size << ',' << fmt(c.row_sup) << ',' << fmt(c.col_sup);
                csv.push_back(line.str());
                cells.push_back({{"s", c.s},
                                 {"pool", c.pool_size},
                                 {"row_sup", c.row_sup},
                                 {"col_sup", c.col_sup}});
            }
            ordered_json rep;
            rep["cells"] = cells;
            rep["c0_hat"] = sweep.c0_hat;
            rep["populated"] = sweep.populated;
            rep["col_sup_max"] = sweep.col_sup_max;
            em.emit(std::move(rep), csv);
            return 0;
        }

        if (c_iv->parsed()) {
            Poly P = load_poly(iv_poly);
            auto prog = make_progression(iv_box, iv_start, iv_gap, iv_count);
            ordered_json rep;
            if (iv_demo) {
                auto tr = induction_demo(P, prog, iv_delta, iv_Cmax, cfg.C_condense);
                rep["complete"] = tr.complete;
                if (!tr.failed_stage.empty()) rep["failed_stage"] = tr.failed_stage;
                rep["sum_abs"] = tr.sum_abs;
                rep["K"] = tr.K;
                rep["H_size"] = tr.H.size();
                rep["H_prime_size"] = tr.H_prime.size();
                rep["common_q"] = tr.common_q;
                ordered_json certs = ordered_json::array();
                for (const auto& c : tr.certs)
                    certs.push_back(
                        {{"alpha", c.alpha.exps}, {"Q", c.Q}, {"scaled_defect", c.scaled_defect}});
                rep["certs"] = certs;
                rep["stages"] = tr.stages;
            } else {
                auto res = inverse_verify(P, prog, iv_delta, iv_Cmax, cfg.max_Q);
                rep["sum_abs"] = res.sum_abs;
                rep["kind"] = res.kind == InverseOutcome::Certificate  ? "certificate"
                              : res.kind == InverseOutcome::SmallBox   ? "small_box"
                                                                       : "counterexample";
                if (!res.note.empty()) rep["note"] = res.note;
                if (res.cert) {
                    rep["Q"] = res.cert->Q;
                    rep["max_defect"] = res.cert->max_defect;
                    rep["bound"] = res.cert->bound;
                    rep["defects"] = res.cert->defects;
                }
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_vd->parsed()) {
            Poly P = load_poly(vd_poly);
            if (P.dim() != 1) throw UsageError("vdc: one-dimensional phases only");
            std::vector<std::complex<double>> F;
            F.reserve(static_cast<size_t>(vd_I));
            for (long long n = 1; n <= vd_I; ++n) {
                long long pt[1] = {n};
                F.push_back(cis_unit(P.phase_mod1(std::span<const long long>(pt, 1))));
            }
            auto r = vdc_difference(F, static_cast<double>(vd_H));
            ordered_json rep;
            rep["lhs_sq"] = r.lhs_sq;
            rep["rhs"] = r.rhs;
            rep["ratio"] = r.ratio;
            rep["frozen_C"] = cfg.C_vdc;
            rep["pass"] = r.ratio <= cfg.C_vdc;
            em.emit(std::move(rep));
            return 0;
        }

        if (c_cd->parsed()) {
            std::optional<Rational> exact;
            double a0;
            auto slash = cd_alpha.find('/');
            if (slash != std::string::npos) {
                exact = Rational(std::stoll(cd_alpha.substr(0, slash)),
                                 std::stoll(cd_alpha.substr(slash + 1)));
                a0 = exact->to_double();
            } else {
                a0 = std::stod(cd_alpha);
            }
            std::vector<long long> H = cd_H;
            if (H.empty() && cd_mult > 0)
                for (long long n = cd_mult; n <= cd_N; n += cd_mult) H.push_back(n);
            auto r = condense(a0, exact, H, cd_N, cd_eps, cd_delta, cfg.C_condense);
            ordered_json rep;
            rep["found"] = r.found;
            if (r.found) {
                rep["q"] = r.q;
                rep["defect"] = r.defect;
                rep["bound"] = r.bound;
            } else {
                rep["best_q"] = r.best_q;
                rep["best_defect"] = r.best_defect;
                rep["note"] = "no q met the bound; constants too small at this scale";
            }
            em.emit(std::move(rep));
            return 0;
        }

        if (c_rs->parsed()) {
            auto prog = make_progression(rs_box, rs_start, rs_gap, rs_count);
            auto r = rescale(prog, rs_K, rs_frac, cfg.max_lattice);
            ordered_json rep;
            rep["subs"] = r.subs.size();
            rep["remainder"] = r.remainder.size();
            rep["remainder_fraction"] = r.remainder_fraction;
            ordered_json subs = ordered_json::array();
            for (size_t i = 0; i < r.subs.size() && i < 16; ++i) {
                ordered_json axes = ordered_json::array();
                for (const auto& ax : r.subs[i].axes)
                    axes.push_back({{"start", ax.start}, {"gap", ax.gap}, {"count", ax.count}});
                subs.push_back(axes);
            }
            rep["first_subs"] = subs;
            em.emit(std::move(rep));
            return 0;
        }

        if (c_cl->parsed()) {
            ordered_json rep = run_calibration(cl_cases, cfg);
            em.emit(std::move(rep));
            return 0;
        }

        out << app.help();
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        err << "precondition error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 5;
    }
}

}  // namespace oscsum
