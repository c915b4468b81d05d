#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace oscsum {

// An element of Z[zeta_Q] stored as integer multiplicities of the powers
// zeta_Q^0 .. zeta_Q^{Q-1}.  Complete rational-phase exponential sums live
// here, and "the sum vanishes" becomes divisibility of the multiplicity
// polynomial by the Q-th cyclotomic polynomial -- an exact integer test.
class CycloSum {
  public:
    explicit CycloSum(int Q);

    int order() const { return Q_; }
    // adds mult * zeta_Q^k (k taken mod Q, may be negative)
    void add(long long k, long long mult = 1);

    // exactly zero as an algebraic number
    bool is_zero() const;
    bool equals(const CycloSum& o) const;

    // floating image sum_k c_k e(k/Q), scaled
    std::complex<double> value(double scale = 1.0) const;

    const std::vector<long long>& counts() const { return c_; }

    // coefficients of the Q-th cyclotomic polynomial, low degree first
    static std::vector<long long> cyclotomic_poly(int Q);

  private:
    int Q_;
    std::vector<long long> c_;
};

}  // namespace oscsum
