#pragma once

#include <cstdint>
#include <string>

#include "oscsum/errors.hpp"

namespace oscsum {

// Exact rational on int64 with __int128 intermediates.  Overflow throws:
// at desk scale (denominators <= ~10^3, box weights <= ~2^40) nothing
// legitimate overflows, so an overflow is a usage error, not a rounding
// event.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n, long long d);
    static Rational integer(long long n) { return Rational(n, 1); }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }
    Rational times_int(long long k) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }

    // representative in [0, 1)
    Rational mod1() const;
    // exact distance to the nearest integer
    Rational torus_norm() const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

  private:
    long long num_;
    long long den_;  // > 0, gcd(|num|, den) = 1
};

long long gcd_ll(long long a, long long b);

}  // namespace oscsum
