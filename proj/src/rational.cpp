#include "oscsum/rational.hpp"

#include <cstdlib>

namespace oscsum {

namespace {
using i128 = __int128;

long long checked_ll(i128 v, const char* what) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw UsageError(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}

i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

long long gcd_ll(long long a, long long b) { return static_cast<long long>(gcd_i128(a, b)); }

Rational::Rational(long long n, long long d) {
    if (d == 0) throw UsageError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = gcd_ll(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = n;
    den_ = d;
}

Rational Rational::operator+(const Rational& o) const {
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd_i128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational(checked_ll(n, "+"), checked_ll(d, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd_i128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational(checked_ll(n, "*"), checked_ll(d, "*"));
}

Rational Rational::times_int(long long k) const { return *this * Rational::integer(k); }

bool Rational::operator<(const Rational& o) const {
    return static_cast<i128>(num_) * o.den_ < static_cast<i128>(o.num_) * den_;
}

Rational Rational::mod1() const {
    long long r = num_ % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
}

Rational Rational::torus_norm() const {
    Rational m = mod1();
    // min(m, 1 - m)
    if (2 * m.num_ <= m.den_) return m;
    return Rational(m.den_ - m.num_, m.den_);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace oscsum
