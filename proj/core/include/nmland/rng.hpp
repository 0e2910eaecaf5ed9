#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nmland {

// All randomness flows through one seedable engine type so that every
// landscape and every experiment replicate is reproducible from a
// (master seed, stream index) pair. Reproducibility is bit-exact for a
// given standard library; no cross-toolchain guarantee is made.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    // Independent substream: (seed, stream) are mixed through splitmix64 so
    // adjacent stream indices do not yield correlated engines.
    static Rng substream(std::uint64_t seed, std::uint64_t stream);

    double uniform01();                   // [0, 1)
    double uniform(double lo, double hi); // [lo, hi)
    double normal(double stddev);         // mean 0
    int uniform_int(int lo, int hi);      // inclusive bounds
    std::uint64_t next() { return engine_(); }

    // k distinct values from {0, ..., n-1}, order randomized.
    std::vector<int> sample_without_replacement(int n, int k);

    std::mt19937_64& engine() { return engine_; }

private:
    static std::uint64_t mix(std::uint64_t x);

    std::mt19937_64 engine_;
};

}  // namespace nmland
