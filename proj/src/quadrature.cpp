#include "oscsum/quadrature.hpp"

#include <cmath>
#include <vector>

#include "oscsum/numeric.hpp"

namespace oscsum {

namespace {
// 8-point Gauss-Legendre on [-1, 1]
const double kNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                          0.7966664774136267,  0.9602898564975363};
const double kWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

long long panels_for(long long n_nodes) { return std::max<long long>(1, (n_nodes + 7) / 8); }
}  // namespace

std::complex<double> integrate_c1(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, long long n_nodes) {
    long long panels = panels_for(n_nodes);
    double h = (b - a) / static_cast<double>(panels);
    KahanCSum acc;
    for (long long p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h, half = 0.5 * h;
        for (int i = 0; i < 8; ++i) acc.add(f(mid + half * kNodes[i]) * (kWeights[i] * half));
    }
    return acc.value();
}

std::complex<double> integrate_c2(const std::function<std::complex<double>(double, double)>& f,
                                  double a1, double b1, double a2, double b2,
                                  long long n_nodes_per_axis) {
    long long panels = panels_for(n_nodes_per_axis);
    double h1 = (b1 - a1) / static_cast<double>(panels);
    double h2 = (b2 - a2) / static_cast<double>(panels);
    KahanCSum acc;
    for (long long p = 0; p < panels; ++p) {
        double m1 = a1 + p * h1 + 0.5 * h1;
        for (long long q = 0; q < panels; ++q) {
            double m2 = a2 + q * h2 + 0.5 * h2;
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    acc.add(f(m1 + 0.5 * h1 * kNodes[i], m2 + 0.5 * h2 * kNodes[j]) *
                            (kWeights[i] * kWeights[j] * 0.25 * h1 * h2));
        }
    }
    return acc.value();
}

double integrate_r1(const std::function<double(double)>& f, double a, double b, long long n_nodes) {
    return integrate_c1([&](double t) { return std::complex<double>(f(t), 0.0); }, a, b, n_nodes)
        .real();
}

}  // namespace oscsum
