// Seeded random generation. All draws go through hand-rolled mappings from
// mt19937_64 words rather than std distributions, so a given seed produces
// the same stream on every platform and standard library.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lipfree {

class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

    uint64_t next_word() { return engine_(); }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

    /// Uniform integer in [0, n).
    long below(long n) { return static_cast<long>(engine_() % static_cast<uint64_t>(n)); }

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) { return lo + below(hi - lo + 1); }

    bool coin() { return (engine_() & 1) != 0; }

    /// Independent substream for a named component under one master seed.
    Rng fork(std::string_view tag) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return Rng(seed_ ^ h);
    }

private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace lipfree
