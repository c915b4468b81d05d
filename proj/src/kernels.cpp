#include "oscsum/kernels.hpp"

#include <cmath>

#include "oscsum/errors.hpp"
#include "oscsum/numeric.hpp"
#include "oscsum/quadrature.hpp"

namespace oscsum {

namespace {

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// numeric three-part CZ norm: sup |x|^D |K| + sup |x|^{D+1} |grad K| +
// sup over annuli of |avg|; directions x radii sampling
double estimate_cz_norm(const std::function<double(std::span<const double>)>& K, int D, bool odd) {
    double sup_size = 0.0, sup_grad = 0.0;
    auto probe = [&](std::span<const double> x) {
        double r = norm2(x);
        if (r <= 0.0) return;
        double val = std::abs(K(x));
        sup_size = std::max(sup_size, std::pow(r, D) * val);
        double h = 1e-5 * r, g2 = 0.0;
        std::vector<double> y(x.begin(), x.end());
        for (int i = 0; i < D; ++i) {
            y[i] = x[i] + h;
            double fp = K(y);
            y[i] = x[i] - h;
            double fm = K(y);
            y[i] = x[i];
            double gi = (fp - fm) / (2.0 * h);
            g2 += gi * gi;
        }
        sup_grad = std::max(sup_grad, std::pow(r, D + 1) * std::sqrt(g2));
    };

    for (int ri = -8; ri <= 8; ++ri) {
        double rad = std::ldexp(1.0, ri);
        if (D == 1) {
            double xp[1] = {rad}, xm[1] = {-rad};
            probe(std::span<const double>(xp, 1));
            probe(std::span<const double>(xm, 1));
        } else {
            for (int a = 0; a < 128; ++a) {
                double th = 2.0 * M_PI * a / 128.0;
                std::vector<double> x(static_cast<size_t>(D), 0.0);
                x[0] = rad * std::cos(th);
                x[1] = rad * std::sin(th);
                probe(x);
            }
        }
    }

    double sup_avg = 0.0;
    if (!odd) {
        for (int lo = -6; lo <= 4; lo += 2)
            for (int hi = lo + 2; hi <= 6; hi += 2) {
                double r = std::ldexp(1.0, lo), R = std::ldexp(1.0, hi);
                double avg;
                if (D == 1) {
                    avg = integrate_r1([&](double t) { double x[1] = {t}; return K(std::span<const double>(x, 1)); }, r, R, 4096) +
                          integrate_r1([&](double t) { double x[1] = {t}; return K(std::span<const double>(x, 1)); }, -R, -r, 4096);
                } else {
                    avg = integrate_c2(
                              [&](double u, double v) {
                                  double x[2] = {u, v};
                                  double rr = norm2(std::span<const double>(x, 2));
                                  if (rr < r || rr > R) return std::complex<double>(0.0, 0.0);
                                  return std::complex<double>(K(std::span<const double>(x, 2)), 0.0);
                              },
                              -R, R, -R, R, 512)
                              .real();
                }
                sup_avg = std::max(sup_avg, std::abs(avg));
            }
    }
    return sup_size + sup_grad + sup_avg;
}

}  // namespace

CZKernel CZKernel::hilbert() {
    CZKernel k;
    k.D = 1;
    k.name = "hilbert";
    k.raw = [](std::span<const double> x) { return 1.0 / x[0]; };
    k.scale = 0.5;  // size 1 + gradient 1
    k.odd = true;
    return k;
}

CZKernel CZKernel::riesz(int D) {
    if (D < 2) throw UsageError("riesz kernel needs D >= 2");
    CZKernel k;
    k.D = D;
    k.name = "riesz";
    k.raw = [D](std::span<const double> x) {
        double r = norm2(x);
        return x[0] / std::pow(r, D + 1);
    };
    k.scale = 1.0 / (2.0 + D);  // size 1 + gradient D, with slack for the sampling estimate
    k.odd = true;
    return k;
}

CZKernel CZKernel::custom(int D, std::string name, std::function<double(std::span<const double>)> f,
                          double declared_cz_bound, bool odd) {
    double measured = estimate_cz_norm(f, D, odd);
    if (measured > declared_cz_bound * 1.05)
        throw PreconditionError("custom kernel: measured CZ norm " + std::to_string(measured) +
                                " exceeds declared bound " + std::to_string(declared_cz_bound));
    CZKernel k;
    k.D = D;
    k.name = std::move(name);
    k.raw = std::move(f);
    k.scale = 1.0 / declared_cz_bound;
    k.odd = odd;
    return k;
}

double DyadicKernelFamily::eta(double rho) {
    if (rho <= 0.5) return 1.0;
    if (rho >= 1.0) return 0.0;
    double u = 2.0 * (rho - 0.5);
    return 1.0 - u * u * (3.0 - 2.0 * u);
}

double DyadicKernelFamily::piece_raw(int j, std::span<const double> x) const {
    double rho = norm2(x);
    if (rho <= 0.0) return 0.0;
    double a = eta(rho / std::ldexp(1.0, j)) - eta(rho / std::ldexp(1.0, j - 1));
    if (a == 0.0) return 0.0;
    return K_(x) * a;
}

double DyadicKernelFamily::bump(int j, std::span<const double> x) const {
    double t = norm2(x) / std::ldexp(1.0, j);
    if (t <= 0.25 || t >= 1.0) return 0.0;
    double a = t - 0.25, b = 1.0 - t;
    return a * a * b * b;
}

DyadicKernelFamily::DyadicKernelFamily(CZKernel K, int j_max) : K_(std::move(K)), j_max_(j_max) {
    if (j_max_ < 1) throw UsageError("DyadicKernelFamily: j_max >= 1");
    mean_correction_.assign(static_cast<size_t>(j_max_) + 1, 0.0);

    const int D = K_.D;
    for (int j = 1; j <= j_max_; ++j) {
        if (!K_.odd) {
            // same-annulus bump correction forces the mean to zero
            double mean, mass;
            if (D == 1) {
                auto f = [&](double t) {
                    double x[1] = {t};
                    return piece_raw(j, std::span<const double>(x, 1));
                };
                double hi = std::ldexp(1.0, j), lo = std::ldexp(1.0, j - 2);
                mean = integrate_r1(f, lo, hi, 4096) + integrate_r1(f, -hi, -lo, 4096);
                auto g = [&](double t) {
                    double x[1] = {t};
                    return bump(j, std::span<const double>(x, 1));
                };
                mass = integrate_r1(g, lo, hi, 2048) + integrate_r1(g, -hi, -lo, 2048);
            } else {
                double R = std::ldexp(1.0, j);
                mean = integrate_c2(
                           [&](double u, double v) {
                               double x[2] = {u, v};
                               return std::complex<double>(piece_raw(j, std::span<const double>(x, 2)), 0.0);
                           },
                           -R, R, -R, R, 512)
                           .real();
                mass = integrate_c2(
                           [&](double u, double v) {
                               double x[2] = {u, v};
                               return std::complex<double>(bump(j, std::span<const double>(x, 2)), 0.0);
                           },
                           -R, R, -R, R, 512)
                           .real();
            }
            mean_correction_[j] = mean / mass;
        }
    }

    // certificates by dense sampling
    for (int j = 1; j <= j_max_; ++j) {
        PsiCertificate cert;
        cert.support_lo = std::ldexp(1.0, j - 2);
        cert.support_hi = std::ldexp(1.0, j);
        double scale_sup = std::ldexp(1.0, D * j);
        double scale_grad = std::ldexp(1.0, D * (j + 1));
        auto probe = [&](std::span<const double> x) {
            double v = psi(j, x);
            cert.sup_scaled = std::max(cert.sup_scaled, std::abs(v) * scale_sup);
            double h = 1e-5 * std::ldexp(1.0, j), g2 = 0.0;
            std::vector<double> y(x.begin(), x.end());
            for (int i = 0; i < D; ++i) {
                y[i] = x[i] + h;
                double fp = psi(j, y);
                y[i] = x[i] - h;
                double fm = psi(j, y);
                y[i] = x[i];
                double gi = (fp - fm) / (2.0 * h);
                g2 += gi * gi;
            }
            cert.grad_scaled = std::max(cert.grad_scaled, std::sqrt(g2) * scale_grad);
        };
        if (D == 1) {
            for (int i = 0; i <= 1024; ++i) {
                double r = cert.support_lo + (cert.support_hi - cert.support_lo) * i / 1024.0;
                double xp[1] = {r}, xm[1] = {-r};
                probe(std::span<const double>(xp, 1));
                probe(std::span<const double>(xm, 1));
            }
        } else {
            for (int ri = 0; ri <= 96; ++ri)
                for (int a = 0; a < 64; ++a) {
                    double r = cert.support_lo + (cert.support_hi - cert.support_lo) * ri / 96.0;
                    double th = 2.0 * M_PI * a / 64.0;
                    std::vector<double> x(static_cast<size_t>(D), 0.0);
                    x[0] = r * std::cos(th);
                    x[1] = r * std::sin(th);
                    probe(x);
                }
        }
        if (K_.odd) {
            cert.mean = 0.0;
        } else if (D == 1) {
            auto f = [&](double t) {
                double x[1] = {t};
                return psi(j, std::span<const double>(x, 1));
            };
            cert.mean = integrate_r1(f, cert.support_lo, cert.support_hi, 4096) +
                        integrate_r1(f, -cert.support_hi, -cert.support_lo, 4096);
        } else {
            double R = cert.support_hi;
            cert.mean = integrate_c2(
                            [&](double u, double v) {
                                double x[2] = {u, v};
                                return std::complex<double>(psi(j, std::span<const double>(x, 2)), 0.0);
                            },
                            -R, R, -R, R, 512)
                            .real();
        }
        certs_.push_back(cert);
    }
}

double DyadicKernelFamily::psi(int j, std::span<const double> x) const {
    if (j < 1 || j > j_max_) throw UsageError("psi: j out of range");
    double v = piece_raw(j, x);
    double c = mean_correction_[j];
    if (c != 0.0) v -= c * bump(j, x);
    return v;
}

double DyadicKernelFamily::psi_lattice(int j, std::span<const long long> m) const {
    std::vector<double> x(m.size());
    for (size_t i = 0; i < m.size(); ++i) x[i] = static_cast<double>(m[i]);
    return psi(j, x);
}

}  // namespace oscsum
