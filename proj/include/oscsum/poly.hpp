#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscsum/multiindex.hpp"
#include "oscsum/rational.hpp"

namespace oscsum {

// Per-axis scale vector (R_1, ..., R_D), all R_i >= 1.
struct ScaleVec {
    std::vector<double> radii;

    ScaleVec() = default;
    explicit ScaleVec(std::vector<double> r);
    static ScaleVec cubic(double R, int D) { return ScaleVec(std::vector<double>(D, R)); }

    int dim() const { return static_cast<int>(radii.size()); }
    double pow_alpha(const MultiIndex& a) const;  // prod R_i^{a_i}
    double volume() const;                        // prod R_i
};

// A real polynomial sum_a lambda_a x^a stored as a sparse term list in
// graded-lex order.  Each coefficient carries an optional exact rational;
// when present it is authoritative and phase arithmetic at integer points
// is exact mod 1.
class Poly {
  public:
    struct Term {
        MultiIndex alpha;
        double coeff = 0.0;
        std::optional<Rational> exact;
    };

    Poly() = default;
    Poly(int D, std::vector<Term> terms);

    static Poly zero(int D) { return Poly(D, {}); }
    static Poly monomial(int D, MultiIndex a, double c);
    static Poly monomial_exact(int D, MultiIndex a, Rational c);

    int dim() const { return D_; }
    int degree() const;
    bool is_zero() const { return terms_.empty(); }
    bool all_exact() const;
    // membership in the no-constant/no-linear class: every term has |a| in [2, d]
    bool restricted_to(int d) const;

    const std::vector<Term>& terms() const { return terms_; }
    const Term* find(const MultiIndex& a) const;

    Poly plus(const Poly& o) const;
    Poly scaled(double c) const;
    Poly scaled_int(long long k) const;  // preserves exact coefficients

    // exact value sum lambda_a x^a at a real point (fixed term order)
    double eval(std::span<const double> x) const;
    double eval(std::span<const long long> x) const;
    // value at an integer point reduced mod 1, term by term; exact for
    // rational coefficients.  `k` premultiplies every coefficient.
    double phase_mod1(std::span<const long long> n, long long k = 1) const;

    // exact evaluation (requires all_exact and integer point)
    Rational eval_exact(std::span<const long long> n) const;

    // sum_a |lambda_a| t^{|a|}
    double weighted_coeff_sum(double t) const;

    // difference polynomial x -> P(x + h*e_axis) - P(x), binomial-expanded
    Poly shift_difference(long long h, int axis) const;

    std::string to_json() const;
    static Poly from_json(const std::string& text);
    // compact inline syntax: {(2):0.5,(1,1):1/3}
    static Poly parse_inline(const std::string& text);

  private:
    int D_ = 1;
    std::vector<Term> terms_;  // graded-lex sorted, no duplicates, no zero coeffs
    void canonicalize();
};

struct DyadicProfile {
    struct LevelInterval {
        int level;    // l with value in [2^{l-1}, 2^l)
        int j_lo, j_hi;
    };
    std::vector<double> values;          // ||P(2^j .)|| for j = 0..j_max
    std::optional<int> j_lambda;         // max j with value <= 1, if any
    bool zero_poly = false;
    std::vector<LevelInterval> levels;   // consecutive-j runs per dyadic level
};

// Dyadic rescaling profile j -> sum_a 2^{j|a|} |lambda_a| together with its
// level-set structure.
DyadicProfile dyadic_scale_profile(const Poly& P, int j_max);

// coefficient tuple (one double per element of index_set(d, D)) -> Poly
Poly poly_from_lambda(int d, int D, std::span<const double> lambda);

}  // namespace oscsum
