#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace oscsum {

// A Calderon-Zygmund kernel on R^D \ {0}.  Built-ins are odd (so every
// dyadic piece is mean zero by symmetry) and rescaled on construction so
// that size + gradient + annulus-average certificates sum to at most 1.
struct CZKernel {
    int D = 1;
    std::string name;
    std::function<double(std::span<const double>)> raw;
    double scale = 1.0;  // applied multiplicatively to raw
    bool odd = true;

    double operator()(std::span<const double> x) const { return scale * raw(x); }

    static CZKernel hilbert();       // 1/x in D = 1
    static CZKernel riesz(int D);    // x_1 / |x|^{D+1}
    // custom kernel with a declared CZ bound; construction verifies it
    static CZKernel custom(int D, std::string name, std::function<double(std::span<const double>)> f,
                           double declared_cz_bound, bool odd);
};

struct PsiCertificate {
    double sup_scaled = 0.0;   // sup |psi_j| 2^{Dj}
    double grad_scaled = 0.0;  // sup |grad psi_j| 2^{D(j+1)}, finite differences
    double mean = 0.0;         // integral of psi_j (after correction)
    double support_lo = 0.0, support_hi = 0.0;
};

// Dyadic pieces psi_j of K: psi_j(x) = K(x) (eta(x / 2^j) - eta(x / 2^{j-1}))
// minus a same-annulus mean-correction bump when K is not odd.  Summed over
// j the pieces telescope back to K at every nonzero lattice point.
class DyadicKernelFamily {
  public:
    DyadicKernelFamily(CZKernel K, int j_max);

    int dim() const { return K_.D; }
    int j_max() const { return j_max_; }

    double psi(int j, std::span<const double> x) const;
    double psi_lattice(int j, std::span<const long long> m) const;
    double eval_K(std::span<const double> x) const { return K_(x); }

    const std::vector<PsiCertificate>& certificates() const { return certs_; }

    // C^1 radial cutoff: 1 on [0, 1/2], 0 on [1, inf)
    static double eta(double rho);

  private:
    CZKernel K_;
    int j_max_;
    std::vector<double> mean_correction_;  // bump multiplier per piece
    std::vector<PsiCertificate> certs_;

    double piece_raw(int j, std::span<const double> x) const;
    double bump(int j, std::span<const double> x) const;
};

}  // namespace oscsum
