#include "nmland/rng.hpp"

#include <stdexcept>

namespace nmland {

// splitmix64 finalizer; good avalanche even for tiny seeds like 0, 1, 2.
std::uint64_t Rng::mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed) ^ mix(stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
}

double Rng::uniform01() {
    return (engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double Rng::normal(double stddev) {
    std::normal_distribution<double> dist(0.0, stddev);
    return dist(engine_);
}

int Rng::uniform_int(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(engine_);
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("sample size out of range");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    // partial Fisher-Yates
    for (int i = 0; i < k; ++i) std::swap(pool[i], pool[uniform_int(i, n - 1)]);
    pool.resize(k);
    return pool;
}

}  // namespace nmland
