#include "oscsum/coeffnorm.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "oscsum/numeric.hpp"

namespace oscsum {

namespace {

constexpr double kBoundaryTol = 1e-12;  // "within 1e-12 of 2^s" counts as <=

// minimal integer s with m <= 2^s + tol
int min_scale_for(double m) {
    if (m <= kBoundaryTol) return INT_MIN / 2;
    int s = ceil_log2(m);
    while (s > INT_MIN / 2 && m <= std::ldexp(1.0, s - 1) + kBoundaryTol) --s;
    while (m > std::ldexp(1.0, s) + kBoundaryTol) ++s;
    return s;
}

int ceil_log2_int(long long q) {
    int s = 0;
    while ((1LL << s) < q) ++s;
    return s;
}

struct WeightedCoeff {
    double lambda;  // |coeff|: the torus norm is even, so the sign is immaterial
    double weight;
};

// fractional part for nonnegative arguments; truncation avoids a libm call
// in the witness scan, min() avoids an unpredictable branch
inline double torus_nonneg(double x) {
    double f = x - static_cast<double>(static_cast<long long>(x));
    return std::min(f, 1.0 - f);
}

}  // namespace

double CoeffNormResult::norm() const {
    if (zero) return 0.0;
    return std::ldexp(1.0, s0);
}

CoeffNormResult coeff_norm(const Poly& P, const ScaleVec& R) {
    if (R.dim() != P.dim()) throw UsageError("coeff_norm: scale dimension mismatch");
    for (double r : R.radii)
        if (!(r >= 1.0)) throw PreconditionError("coeff_norm: radii must satisfy R_i >= 1");

    std::vector<WeightedCoeff> wc;
    for (const auto& t : P.terms()) wc.push_back({std::abs(t.coeff), R.pow_alpha(t.alpha)});
    // heaviest weight first: the leading term alone rejects most candidates
    std::sort(wc.begin(), wc.end(), [](const WeightedCoeff& a, const WeightedCoeff& b) {
        return a.weight > b.weight;
    });

    double sigma1 = 0.0;
    for (const auto& c : wc) sigma1 += torus_norm(c.lambda) * c.weight;

    CoeffNormResult res;
    if (sigma1 <= kBoundaryTol) {
        res.zero = true;
        return res;
    }
    if (sigma1 <= 1.0 + kBoundaryTol) {
        res.s0 = min_scale_for(sigma1);
        res.residual = sigma1;
        return res;
    }

    // Q = 1 seeds the scan; termination is guaranteed because sigma1 bounds
    // every m(Q) from the trivial estimate sum_a R^a.
    int best_s = std::max(1, min_scale_for(sigma1));
    long long best_Q = 1;
    double best_m = sigma1;

    // truncation-based fractional parts need Q * lambda well inside 2^63
    double lam_max = 0.0;
    for (const auto& c : wc) lam_max = std::max(lam_max, c.lambda);
    bool fast = lam_max * std::ldexp(1.0, std::min(best_s, 60)) < 9.0e18;

    const WeightedCoeff* head = wc.data();
    const size_t nterms = wc.size();
    const double lam0 = head[0].lambda, w0 = head[0].weight;
    double improve_cap = std::ldexp(1.0, best_s - 1);
    double thr = improve_cap + kBoundaryTol;
    double head_cap = thr / w0;  // first-term rejection level on the torus
    double qd = 1.0;
    for (long long Q = 2; best_s > 1; ++Q) {
        qd += 1.0;
        if (qd > improve_cap) break;
        double m;
        if (fast) {
            double f0 = torus_nonneg(qd * lam0);
            if (f0 > head_cap) continue;
            m = f0 * w0;
            for (size_t i = 1; i < nterms; ++i) {
                m += torus_nonneg(qd * head[i].lambda) * head[i].weight;
                if (m > thr) break;
            }
        } else {
            m = 0.0;
            for (size_t i = 0; i < nterms; ++i) {
                double f = frac(qd * head[i].lambda);
                m += (f <= 0.5 ? f : 1.0 - f) * head[i].weight;
                if (m > thr) break;
            }
        }
        if (m > thr) continue;
        int s_req = std::max(min_scale_for(m), ceil_log2_int(Q));
        s_req = std::max(s_req, 1);
        if (s_req < best_s) {
            best_s = s_req;
            best_Q = Q;
            best_m = m;
            improve_cap = std::ldexp(1.0, best_s - 1);
            thr = improve_cap + kBoundaryTol;
            head_cap = thr / w0;
        }
    }

    res.s0 = best_s;
    res.witness_Q = best_Q;
    res.residual = best_m;
    return res;
}

CoeffNormResult coeff_norm_exact(const Poly& P, const std::vector<long long>& R) {
    if (static_cast<int>(R.size()) != P.dim()) throw UsageError("coeff_norm_exact: scale dimension mismatch");
    for (long long r : R)
        if (r < 1) throw PreconditionError("coeff_norm_exact: radii must satisfy R_i >= 1");
    if (!P.all_exact()) throw UsageError("coeff_norm_exact requires exact coefficients");

    struct Item {
        Rational lambda;
        long long weight;
    };
    std::vector<Item> items;
    for (const auto& t : P.terms()) {
        long long w = 1;
        for (int i = 0; i < P.dim(); ++i)
            for (int e = 0; e < t.alpha.exps[i]; ++e) w *= R[i];
        items.push_back({*t.exact, w});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.weight > b.weight; });

    auto weighted_sum = [&](long long Q) {
        Rational m;
        for (const auto& it : items) m = m + it.lambda.times_int(Q).torus_norm().times_int(it.weight);
        return m;
    };
    auto pow2 = [](int s) {
        if (s >= 0) return Rational(1LL << s, 1);
        return Rational(1, 1LL << (-s));
    };
    auto min_scale = [&](const Rational& m) {
        int s = 0;
        while (pow2(s) < m) ++s;
        while (s > -62 && m <= pow2(s - 1)) --s;
        return s;
    };

    Rational sigma1 = weighted_sum(1);
    CoeffNormResult res;
    if (sigma1.is_zero()) {
        res.zero = true;
        return res;
    }
    if (sigma1 <= Rational(1, 1)) {
        res.s0 = min_scale(sigma1);
        res.residual = sigma1.to_double();
        return res;
    }

    int best_s = std::max(1, min_scale(sigma1));
    long long best_Q = 1;
    Rational best_m = sigma1;
    for (long long Q = 2;; ++Q) {
        if (best_s <= 1) break;
        if (Q > (1LL << (best_s - 1))) break;
        Rational cap = pow2(best_s - 1);
        Rational m;
        bool over = false;
        for (const auto& it : items) {
            m = m + it.lambda.times_int(Q).torus_norm().times_int(it.weight);
            if (cap < m) {
                over = true;
                break;
            }
        }
        if (over) continue;
        int s_req = std::max({min_scale(m), ceil_log2_int(Q), 1});
        if (s_req < best_s) {
            best_s = s_req;
            best_Q = Q;
            best_m = m;
        }
    }
    res.s0 = best_s;
    res.witness_Q = best_Q;
    res.residual = best_m.to_double();
    return res;
}

ConvexityReport check_convexity(const Poly& P, int k_max) {
    if (P.is_zero()) throw PreconditionError("check_convexity: nonzero polynomial required");
    ConvexityReport rep;
    for (int k = 0; k <= k_max; ++k) {
        auto r = coeff_norm(P, ScaleVec::cubic(std::ldexp(1.0, k), P.dim()));
        rep.s_by_k.push_back(r.zero ? INT_MIN : r.s0);
    }
    // levels s >= 1 must be runs of consecutive k; levels s <= 0 singletons
    for (int k0 = 0; k0 <= k_max; ++k0) {
        int s = rep.s_by_k[k0];
        if (s == INT_MIN) continue;
        for (int k1 = k0 + 2; k1 <= k_max; ++k1) {
            if (rep.s_by_k[k1] != s) continue;
            bool gap = false;
            int kg = -1;
            for (int km = k0 + 1; km < k1; ++km)
                if (rep.s_by_k[km] != s) {
                    gap = true;
                    kg = km;
                    break;
                }
            bool bad = (s >= 1) ? gap : true;  // any repeat is a violation for s <= 0
            if (bad) {
                rep.pass = false;
                rep.violations.push_back({s, k0, kg, k1});
            }
        }
        if (s <= 0)
            for (int k1 = k0 + 1; k1 <= k_max && k1 <= k0 + 1; ++k1)
                if (rep.s_by_k[k1] == s) {
                    rep.pass = false;
                    rep.violations.push_back({s, k0, -1, k1});
                }
    }
    return rep;
}

RationalLowerBoundResult check_rational_lower_bound(const std::vector<long long>& A, long long Q,
                                                    double delta, const std::vector<long long>& R,
                                                    int d, int D, double c) {
    auto gamma = index_set(d, D);
    if (A.size() != gamma.size()) throw UsageError("check_rational_lower_bound: |A| must equal |Gamma|");
    long long g = Q;
    for (long long a : A) g = gcd_ll(g, a);
    if (g != 1) throw PreconditionError("check_rational_lower_bound: input not reduced, gcd({A},Q) = " +
                                        std::to_string(g));
    double qd = std::pow(static_cast<double>(Q), 1.0 + delta);
    for (long long r : R)
        if (static_cast<double>(r) < qd - 1e-9)
            throw PreconditionError("check_rational_lower_bound: need R_i >= Q^(1+delta)");

    std::vector<Poly::Term> ts;
    for (size_t i = 0; i < gamma.size(); ++i) {
        Poly::Term t;
        t.alpha = gamma[i];
        t.exact = Rational(A[i], Q);
        t.coeff = t.exact->to_double();
        ts.push_back(std::move(t));
    }
    Poly P(D, std::move(ts));
    auto res = coeff_norm_exact(P, R);

    RationalLowerBoundResult out;
    out.n_value = res.norm();
    out.q_pow_delta = std::pow(static_cast<double>(Q), delta);
    out.ratio = out.n_value / out.q_pow_delta;
    out.pass = out.n_value >= c * out.q_pow_delta - 1e-12;
    return out;
}

MultiplicativityResult check_multiplicativity(const Poly& P, long long k, const ScaleVec& R) {
    if (k < 1) throw PreconditionError("check_multiplicativity: k >= 1 required");
    MultiplicativityResult out;
    auto np = coeff_norm(P, R);
    auto nkp = coeff_norm(P.scaled_int(k), R);
    out.lhs = np.norm();
    // When kP is integral mod 1 (or N(kP) < 1), the witness construction
    // still yields N(P) <= 2^{ceil log2 k}, so the right side clamps at 1.
    double nk = nkp.zero ? 1.0 : std::max(nkp.norm(), 1.0);
    out.rhs = std::ldexp(1.0, ceil_log2_int(k)) * nk;
    out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
    return out;
}

}  // namespace oscsum
