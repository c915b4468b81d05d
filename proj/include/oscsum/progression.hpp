#pragma once

#include <functional>
#include <span>
#include <vector>

#include "oscsum/errors.hpp"

namespace oscsum {

// One axis of a multi-dimensional arithmetic progression inside the
// ambient interval [-box, box]: values start + t*gap for 0 <= t < count.
struct AxisProgression {
    long long start = 1;
    long long gap = 1;
    long long count = 1;
    long long box = 1;
};

struct Progression {
    std::vector<AxisProgression> axes;

    Progression() = default;
    explicit Progression(std::vector<AxisProgression> a);
    // the box (0, N] in D = 1
    static Progression full_box_1d(long long N);
    // (0, N_i] in each axis
    static Progression full_box(const std::vector<long long>& N);

    int dim() const { return static_cast<int>(axes.size()); }
    long long size() const;       // number of points
    double normalization() const; // prod N_i (ambient box volume)

    // visit(k, point) for the k-th point in odometer (row-major) order
    void for_each(const std::function<void(long long, std::span<const long long>)>& visit) const;
    // point for a flat odometer index
    std::vector<long long> point_at(long long flat) const;
};

// Amplitude on the lattice with a regularity certificate
// sup|phi| + sum_j R_j sup|phi - phi(. - e_j)|,
// measured over the progression it is used with.
struct Amplitude {
    std::function<double(std::span<const long long>)> phi;

    static Amplitude one();
    double certificate(const Progression& prog) const;
};

}  // namespace oscsum
