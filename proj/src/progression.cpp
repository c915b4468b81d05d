#include "oscsum/progression.hpp"

#include <cmath>
#include <cstdlib>

namespace oscsum {

Progression::Progression(std::vector<AxisProgression> a) : axes(std::move(a)) {
    for (const auto& ax : axes) {
        if (ax.count < 1 || ax.gap < 1 || ax.box < 1) throw PreconditionError("Progression: bad axis");
        long long last = ax.start + (ax.count - 1) * ax.gap;
        if (std::llabs(ax.start) > ax.box || std::llabs(last) > ax.box)
            throw PreconditionError("Progression: elements leave the ambient box");
    }
}

Progression Progression::full_box_1d(long long N) { return Progression({AxisProgression{1, 1, N, N}}); }

Progression Progression::full_box(const std::vector<long long>& N) {
    std::vector<AxisProgression> axes;
    for (long long n : N) axes.push_back(AxisProgression{1, 1, n, n});
    return Progression(std::move(axes));
}

long long Progression::size() const {
    long long s = 1;
    for (const auto& ax : axes) s *= ax.count;
    return s;
}

double Progression::normalization() const {
    double p = 1.0;
    for (const auto& ax : axes) p *= static_cast<double>(ax.box);
    return p;
}

void Progression::for_each(const std::function<void(long long, std::span<const long long>)>& visit) const {
    const int D = dim();
    std::vector<long long> idx(D, 0), pt(D);
    for (int i = 0; i < D; ++i) pt[i] = axes[i].start;
    long long flat = 0, total = size();
    while (flat < total) {
        visit(flat, pt);
        ++flat;
        for (int i = D - 1; i >= 0; --i) {
            if (++idx[i] < axes[i].count) {
                pt[i] += axes[i].gap;
                break;
            }
            idx[i] = 0;
            pt[i] = axes[i].start;
        }
    }
}

std::vector<long long> Progression::point_at(long long flat) const {
    const int D = dim();
    std::vector<long long> pt(D);
    for (int i = D - 1; i >= 0; --i) {
        long long t = flat % axes[i].count;
        flat /= axes[i].count;
        pt[i] = axes[i].start + t * axes[i].gap;
    }
    return pt;
}

Amplitude Amplitude::one() {
    Amplitude a;
    a.phi = [](std::span<const long long>) { return 1.0; };
    return a;
}

double Amplitude::certificate(const Progression& prog) const {
    double sup = 0.0;
    std::vector<double> lip(prog.dim(), 0.0);
    prog.for_each([&](long long, std::span<const long long> p) {
        double v = phi(p);
        sup = std::max(sup, std::abs(v));
        std::vector<long long> q(p.begin(), p.end());
        for (int j = 0; j < prog.dim(); ++j) {
            q[j] -= 1;
            lip[j] = std::max(lip[j], std::abs(v - phi(q)));
            q[j] += 1;
        }
    });
    double total = sup;
    for (int j = 0; j < prog.dim(); ++j) total += static_cast<double>(prog.axes[j].box) * lip[j];
    return total;
}

}  // namespace oscsum
