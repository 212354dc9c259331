#pragma once

#include <cstdint>

namespace maxrep {

/// splitmix64. Deterministic across platforms, which the reproducible-report
/// contract needs; std:: distributions are not.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, n)
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform in [lo, hi]
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// uniform integer in [lo, hi]
    long integer(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }

private:
    uint64_t state_;
};

} // namespace maxrep
