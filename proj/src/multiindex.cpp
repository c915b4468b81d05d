#include "oscsum/multiindex.hpp"

#include <algorithm>
#include <functional>

namespace oscsum {

MultiIndex MultiIndex::unit(int D, int axis) {
    std::vector<int> e(D, 0);
    e[axis] = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::degree() const {
    int s = 0;
    for (int e : exps) s += e;
    return s;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (exps.size() != o.exps.size()) return false;
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > o.exps[i]) return false;
    return true;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end());
}

std::vector<MultiIndex> index_set(int d, int D) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(D, 0);
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
        if (axis == D) {
            MultiIndex m{cur};
            if (m.degree() >= 2) out.push_back(m);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[axis] = e;
            rec(axis + 1, remaining - e);
        }
        cur[axis] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

}  // namespace oscsum
