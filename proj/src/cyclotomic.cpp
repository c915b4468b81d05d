#include "oscsum/cyclotomic.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "oscsum/numeric.hpp"

namespace oscsum {

namespace {
using i128 = __int128;

// exact division of integer polynomials, divisor monic; returns quotient
std::vector<long long> divide_exact(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<i128> r(a.begin(), a.end());
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(r.size()) - 1;
    std::vector<long long> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        i128 coef = r[i];
        if (coef == 0) continue;
        q[i - db] = static_cast<long long>(coef);
        for (int j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
    }
    for (auto v : r)
        if (v != 0) throw std::logic_error("cyclotomic division not exact");
    return q;
}
}  // namespace

std::vector<long long> CycloSum::cyclotomic_poly(int Q) {
    static std::map<int, std::vector<long long>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(Q);
    if (it != cache.end()) return it->second;

    // Phi_Q = (x^Q - 1) / prod_{d | Q, d < Q} Phi_d, computed bottom-up
    std::function<std::vector<long long>(int)> phi = [&](int n) -> std::vector<long long> {
        auto c = cache.find(n);
        if (c != cache.end()) return c->second;
        std::vector<long long> p(n + 1, 0);
        p[0] = -1;
        p[n] = 1;
        for (int d = 1; d < n; ++d)
            if (n % d == 0) p = divide_exact(p, phi(d));
        cache[n] = p;
        return p;
    };
    return phi(Q);
}

CycloSum::CycloSum(int Q) : Q_(Q), c_(Q, 0) {
    if (Q < 1) throw std::invalid_argument("CycloSum: Q must be positive");
}

void CycloSum::add(long long k, long long mult) {
    long long r = k % Q_;
    if (r < 0) r += Q_;
    c_[static_cast<size_t>(r)] += mult;
}

bool CycloSum::is_zero() const {
    // remainder of sum c_k x^k mod Phi_Q must vanish identically
    auto phi = cyclotomic_poly(Q_);
    int dp = static_cast<int>(phi.size()) - 1;
    std::vector<i128> r(c_.begin(), c_.end());
    for (int i = Q_ - 1; i >= dp; --i) {
        i128 coef = r[i];
        if (coef == 0) continue;
        for (int j = 0; j <= dp; ++j) r[i - dp + j] -= coef * phi[j];
    }
    for (int i = 0; i < dp; ++i)
        if (r[i] != 0) return false;
    return true;
}

bool CycloSum::equals(const CycloSum& o) const {
    if (Q_ != o.Q_) return false;
    CycloSum d(Q_);
    for (int k = 0; k < Q_; ++k) d.c_[k] = c_[k] - o.c_[k];
    return d.is_zero();
}

std::complex<double> CycloSum::value(double scale) const {
    KahanCSum acc;
    for (int k = 0; k < Q_; ++k) {
        if (c_[k] == 0) continue;
        acc.add(static_cast<double>(c_[k]) * cis_unit(frac(static_cast<double>(k) / Q_)));
    }
    return acc.value() * scale;
}

}  // namespace oscsum
