#include "oscsum/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "oscsum/numeric.hpp"

namespace oscsum {

ScaleVec::ScaleVec(std::vector<double> r) : radii(std::move(r)) {
    for (double R : radii)
        if (!(R >= 1.0)) throw PreconditionError("ScaleVec: radii must satisfy R_i >= 1");
}

double ScaleVec::pow_alpha(const MultiIndex& a) const {
    double p = 1.0;
    for (int i = 0; i < dim(); ++i)
        for (int e = 0; e < a.exps[i]; ++e) p *= radii[i];
    return p;
}

double ScaleVec::volume() const {
    double p = 1.0;
    for (double R : radii) p *= R;
    return p;
}

Poly::Poly(int D, std::vector<Term> terms) : D_(D), terms_(std::move(terms)) {
    if (D_ < 1) throw UsageError("Poly: dimension must be >= 1");
    for (auto& t : terms_) {
        if (t.alpha.dim() != D_) throw UsageError("Poly: multi-index dimension mismatch");
        if (t.exact) t.coeff = t.exact->to_double();
    }
    canonicalize();
}

Poly Poly::monomial(int D, MultiIndex a, double c) { return Poly(D, {Term{std::move(a), c, std::nullopt}}); }

Poly Poly::monomial_exact(int D, MultiIndex a, Rational c) {
    return Poly(D, {Term{std::move(a), c.to_double(), c}});
}

void Poly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return graded_lex_less(a.alpha, b.alpha); });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().alpha == t.alpha) {
            Term& m = merged.back();
            if (m.exact && t.exact) {
                m.exact = *m.exact + *t.exact;
                m.coeff = m.exact->to_double();
            } else {
                m.exact.reset();
                m.coeff += t.coeff;
            }
        } else {
            merged.push_back(t);
        }
    }
    terms_.clear();
    for (auto& t : merged) {
        bool zero = t.exact ? t.exact->is_zero() : (t.coeff == 0.0);
        if (!zero) terms_.push_back(std::move(t));
    }
}

int Poly::degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.alpha.degree());
    return d;
}

bool Poly::all_exact() const {
    for (const auto& t : terms_)
        if (!t.exact) return false;
    return true;
}

bool Poly::restricted_to(int d) const {
    for (const auto& t : terms_) {
        int deg = t.alpha.degree();
        if (deg < 2 || deg > d) return false;
    }
    return true;
}

const Poly::Term* Poly::find(const MultiIndex& a) const {
    for (const auto& t : terms_)
        if (t.alpha == a) return &t;
    return nullptr;
}

Poly Poly::plus(const Poly& o) const {
    if (o.D_ != D_) throw UsageError("Poly::plus: dimension mismatch");
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return Poly(D_, std::move(all));
}

Poly Poly::scaled(double c) const {
    std::vector<Term> ts = terms_;
    for (auto& t : ts) {
        t.coeff *= c;
        t.exact.reset();
    }
    return Poly(D_, std::move(ts));
}

Poly Poly::scaled_int(long long k) const {
    std::vector<Term> ts = terms_;
    for (auto& t : ts) {
        if (t.exact)
            t.exact = t.exact->times_int(k);
        else
            t.coeff *= static_cast<double>(k);
    }
    return Poly(D_, std::move(ts));
}

namespace {
double pow_point_d(std::span<const double> x, const MultiIndex& a) {
    double p = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (int e = 0; e < a.exps[i]; ++e) p *= x[i];
    return p;
}

double pow_point_i(std::span<const long long> x, const MultiIndex& a) {
    double p = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (int e = 0; e < a.exps[i]; ++e) p *= static_cast<double>(x[i]);
    return p;
}

long long pow_mod(long long base, int e, long long m) {
    long long b = base % m;
    if (b < 0) b += m;
    long long r = 1 % m;
    for (int i = 0; i < e; ++i) r = static_cast<long long>((static_cast<__int128>(r) * b) % m);
    return r;
}
}  // namespace

double Poly::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != D_) throw UsageError("Poly::eval: dimension mismatch");
    double s = 0.0;
    for (const auto& t : terms_) s += t.coeff * pow_point_d(x, t.alpha);
    return s;
}

double Poly::eval(std::span<const long long> x) const {
    if (static_cast<int>(x.size()) != D_) throw UsageError("Poly::eval: dimension mismatch");
    double s = 0.0;
    for (const auto& t : terms_) s += t.coeff * pow_point_i(x, t.alpha);
    return s;
}

double Poly::phase_mod1(std::span<const long long> n, long long k) const {
    if (static_cast<int>(n.size()) != D_) throw UsageError("Poly::phase_mod1: dimension mismatch");
    // Reduce each monomial mod 1 before accumulating: keeps integer-valued
    // monomials contributing exactly zero and bounds rounding by the term
    // count rather than the phase magnitude.
    double s = 0.0;
    for (const auto& t : terms_) {
        if (t.exact) {
            long long den = t.exact->den();
            if (den == 1) continue;  // integer coefficient: zero phase at integer points
            long long num = ((t.exact->num() % den) + den) % den;
            long long kc = ((k % den) * num) % den;
            long long p = 1;
            for (int i = 0; i < D_; ++i)
                if (t.alpha.exps[i] > 0)
                    p = static_cast<long long>(
                        (static_cast<__int128>(p) * pow_mod(n[i], t.alpha.exps[i], den)) % den);
            long long m = static_cast<long long>((kc * static_cast<__int128>(p)) % den);
            s += static_cast<double>(m) / static_cast<double>(den);
        } else {
            s += frac(static_cast<double>(k) * t.coeff * pow_point_i(n, t.alpha));
        }
    }
    return frac(s);
}

Rational Poly::eval_exact(std::span<const long long> n) const {
    if (static_cast<int>(n.size()) != D_) throw UsageError("Poly::eval_exact: dimension mismatch");
    Rational s;
    for (const auto& t : terms_) {
        if (!t.exact) throw UsageError("Poly::eval_exact requires exact coefficients");
        long long p = 1;
        for (int i = 0; i < D_; ++i)
            for (int e = 0; e < t.alpha.exps[i]; ++e) p *= n[i];
        s = s + t.exact->times_int(p);
    }
    return s;
}

double Poly::weighted_coeff_sum(double t) const {
    double s = 0.0;
    for (const auto& term : terms_) {
        int deg = term.alpha.degree();
        if (deg == 0) continue;  // the coefficient norm ignores constants
        s += std::abs(term.coeff) * std::pow(t, deg);
    }
    return s;
}

Poly Poly::shift_difference(long long h, int axis) const {
    if (axis < 0 || axis >= D_) throw UsageError("shift_difference: axis out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        int a = t.alpha.exps[axis];
        long long binom = 1;  // C(a, j), updated incrementally
        long long hp = 1;
        for (int j = 1; j <= a; ++j) {
            binom = binom * (a - j + 1) / j;
            hp *= h;
            MultiIndex nu = t.alpha;
            nu.exps[axis] = a - j;
            long long mult = binom * hp;
            Term nt;
            nt.alpha = nu;
            if (t.exact) {
                nt.exact = t.exact->times_int(mult);
                nt.coeff = nt.exact->to_double();
            } else {
                nt.coeff = t.coeff * static_cast<double>(mult);
            }
            out.push_back(std::move(nt));
        }
    }
    return Poly(D_, std::move(out));
}

std::string Poly::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = degree();
    j["D"] = D_;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : terms_) {
        nlohmann::ordered_json jt;
        jt["alpha"] = t.alpha.exps;
        if (t.exact)
            jt["coeff"] = {{"num", t.exact->num()}, {"den", t.exact->den()}};
        else
            jt["coeff"] = t.coeff;
        terms.push_back(jt);
    }
    j["terms"] = terms;
    return j.dump();
}

Poly Poly::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("polynomial JSON parse error: ") + e.what());
    }
    if (!j.contains("D") || !j.contains("terms")) throw UsageError("polynomial JSON: missing D or terms");
    int D = j["D"].get<int>();
    std::vector<Term> ts;
    for (const auto& jt : j["terms"]) {
        Term t;
        t.alpha = MultiIndex(jt["alpha"].get<std::vector<int>>());
        const auto& c = jt["coeff"];
        if (c.is_object()) {
            t.exact = Rational(c["num"].get<long long>(), c["den"].get<long long>());
            t.coeff = t.exact->to_double();
        } else {
            t.coeff = c.get<double>();
        }
        ts.push_back(std::move(t));
    }
    return Poly(D, std::move(ts));
}

Poly Poly::parse_inline(const std::string& text) {
    // {(2):0.5,(1,1):1/3}
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw UsageError("inline polynomial must look like {(2):0.5,(1,1):1/3}");
    s = s.substr(1, s.size() - 2);
    std::vector<Term> ts;
    int D = -1;
    size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != '(') throw UsageError("inline polynomial: expected '('");
        size_t close = s.find(')', pos);
        if (close == std::string::npos) throw UsageError("inline polynomial: unbalanced '('");
        std::vector<int> exps;
        std::stringstream tup(s.substr(pos + 1, close - pos - 1));
        std::string tok;
        while (std::getline(tup, tok, ',')) exps.push_back(std::stoi(tok));
        if (D < 0) D = static_cast<int>(exps.size());
        if (static_cast<int>(exps.size()) != D) throw UsageError("inline polynomial: inconsistent dimensions");
        pos = close + 1;
        if (pos >= s.size() || s[pos] != ':') throw UsageError("inline polynomial: expected ':'");
        ++pos;
        size_t end = pos;
        while (end < s.size() && s[end] != ',') ++end;
        std::string coeff = s.substr(pos, end - pos);
        if (coeff.empty()) throw UsageError("inline polynomial: empty coefficient");
        Term t;
        t.alpha = MultiIndex(exps);
        size_t slash = coeff.find('/');
        try {
            if (slash != std::string::npos) {
                t.exact = Rational(std::stoll(coeff.substr(0, slash)), std::stoll(coeff.substr(slash + 1)));
                t.coeff = t.exact->to_double();
            } else {
                t.coeff = std::stod(coeff);
            }
        } catch (const std::exception&) {
            throw UsageError("inline polynomial: bad coefficient '" + coeff + "'");
        }
        ts.push_back(std::move(t));
        pos = end + (end < s.size() ? 1 : 0);
    }
    if (D < 0) throw UsageError("inline polynomial: no terms");
    return Poly(D, std::move(ts));
}

Poly poly_from_lambda(int d, int D, std::span<const double> lambda) {
    auto gamma = index_set(d, D);
    if (lambda.size() != gamma.size()) throw UsageError("poly_from_lambda: coefficient count mismatch");
    std::vector<Poly::Term> ts;
    for (size_t i = 0; i < gamma.size(); ++i)
        if (lambda[i] != 0.0) ts.push_back({gamma[i], lambda[i], std::nullopt});
    return Poly(D, std::move(ts));
}

DyadicProfile dyadic_scale_profile(const Poly& P, int j_max) {
    if (j_max < 1) throw PreconditionError("dyadic_scale_profile: j_max >= 1 required");
    DyadicProfile prof;
    prof.zero_poly = P.is_zero();
    for (int j = 0; j <= j_max; ++j) prof.values.push_back(P.weighted_coeff_sum(std::ldexp(1.0, j)));
    if (!prof.zero_poly) {
        if (prof.values[0] <= 1.0) {
            // values increase without bound, so the scan below terminates
            int j = 0;
            while (P.weighted_coeff_sum(std::ldexp(1.0, j + 1)) <= 1.0) ++j;
            prof.j_lambda = j;
        }
        for (int j = 0; j <= j_max; ++j) {
            double v = prof.values[j];
            if (v <= 0.0) continue;
            int l = ceil_log2(v);
            if (std::ldexp(1.0, l) == v) ++l;  // value ~ 2^l means 2^{l-1} <= v < 2^l
            if (!prof.levels.empty() && prof.levels.back().level == l && prof.levels.back().j_hi == j - 1)
                prof.levels.back().j_hi = j;
            else
                prof.levels.push_back({l, j, j});
        }
    }
    return prof;
}

}  // namespace oscsum
