#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "oscsum/errors.hpp"

namespace oscsum {

inline constexpr double kTorusTol = 1e-12;

// Fractional part in [0, 1).
inline double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards against floor rounding at negative x near an integer
    return f;
}

// Distance to the nearest integer, in [0, 1/2].
inline double torus_norm(double x) {
    if (!std::isfinite(x)) throw PreconditionError("torus_norm: non-finite input");
    double f = frac(x);
    return f <= 0.5 ? f : 1.0 - f;
}

// e(t) = exp(2*pi*i*t) for t already reduced to [0,1).  Quarter-integer
// phases return exact axis values so that alternating-sign sums cancel
// to exactly zero.
inline std::complex<double> cis_unit(double t01) {
    double q = 4.0 * t01;
    double qr = std::nearbyint(q);
    if (q == qr) {
        switch (static_cast<int>(qr) & 3) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double a = 2.0 * M_PI * t01;
    return {std::cos(a), std::sin(a)};
}

inline std::complex<double> cis(double t) { return cis_unit(frac(t)); }

// Neumaier compensated accumulator; keeps 2^24-term sums reproducible
// well below 1e-10.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct KahanCSum {
    KahanSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline int ceil_log2(double x) {
    // smallest integer s with 2^s >= x, for x > 0
    int s = static_cast<int>(std::ceil(std::log2(x)));
    while (std::ldexp(1.0, s) < x) ++s;
    while (s > std::numeric_limits<int>::min() + 1 && std::ldexp(1.0, s - 1) >= x) --s;
    return s;
}

inline long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace oscsum
