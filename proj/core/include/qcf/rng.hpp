// rng.hpp
// Deterministic, platform-independent random streams for the Monte Carlo
// simulator. splitmix64 is tiny, fast and statistically adequate here;
// per-run streams are derived from (seed, run index) so runs can execute
// in any order or in parallel without changing the aggregate.

#pragma once

#include <cstdint>

namespace qcf {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    int next_bit() { return static_cast<int>(next() >> 63); }

    bool bernoulli(double p) { return next_unit() < p; }

private:
    std::uint64_t state_;
};

inline SplitMix64 run_stream(std::uint64_t seed, std::uint64_t run_index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (run_index + 1)));
    return SplitMix64(mix.next());
}

}  // namespace qcf
