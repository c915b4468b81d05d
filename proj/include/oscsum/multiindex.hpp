#pragma once

#include <vector>

namespace oscsum {

// Exponent tuple (a_1, ..., a_D) of a monomial x^a = prod x_i^{a_i}.
struct MultiIndex {
    std::vector<int> exps;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {}
    static MultiIndex unit(int D, int axis);  // e_axis, 0-based

    int dim() const { return static_cast<int>(exps.size()); }
    int degree() const;

    // componentwise partial order
    bool leq(const MultiIndex& o) const;

    bool operator==(const MultiIndex& o) const { return exps == o.exps; }
};

// graded lexicographic: by total degree, then lexicographic on exponents;
// the fixed term order used for all reproducible summations
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return graded_lex_less(a, b); }
};

// All exponents with 2 <= |a| <= d in D variables (the index set of
// polynomials without constant or linear terms), in graded-lex order.
std::vector<MultiIndex> index_set(int d, int D);

}  // namespace oscsum
