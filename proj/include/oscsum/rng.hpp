#pragma once

#include <cstdint>

namespace oscsum {

// splitmix64: tiny, portable, and identical on every platform.  We avoid
// std::uniform_real_distribution because its output is
// implementation-defined, which would break the byte-identical-output
// contract.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi]
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // child stream with decorrelated seed; used to keep per-item draws
    // independent of processing order
    Rng fork(std::uint64_t salt) {
        Rng r(state ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        r.next_u64();
        return r;
    }
};

}  // namespace oscsum
