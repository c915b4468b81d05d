#pragma once

#include <complex>
#include <functional>

namespace oscsum {

// Composite 8-point Gauss-Legendre over [a, b] with at least n_nodes total
// nodes; callers scale n_nodes with the phase oscillation they integrate.
std::complex<double> integrate_c1(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, long long n_nodes);

std::complex<double> integrate_c2(const std::function<std::complex<double>(double, double)>& f,
                                  double a1, double b1, double a2, double b2,
                                  long long n_nodes_per_axis);

double integrate_r1(const std::function<double(double)>& f, double a, double b, long long n_nodes);

}  // namespace oscsum
