#include "nmland/nk.hpp"

#include <algorithm>
#include <stdexcept>

#include "nmland/rng.hpp"

namespace nmland {

namespace {

// total table entries, n * 2^(k+1); keeps degenerate requests from
// allocating gigabytes
void check_table_budget(int n, int k) {
    if (k > 60 || static_cast<std::uint64_t>(n) * (1ull << (k + 1)) > (1ull << 26))
        throw std::invalid_argument("k too large for table storage");
}

}  // namespace

void validate_nk(const NKLandscape& nk) {
    if (nk.n < 1) throw std::invalid_argument("n must be >= 1");
    if (nk.k < 0 || nk.k > nk.n - 1) throw std::invalid_argument("k must be in [0, n-1]");
    check_table_budget(nk.n, nk.k);
    if (static_cast<int>(nk.neighbors.size()) != nk.n ||
        static_cast<int>(nk.tables.size()) != nk.n)
        throw std::invalid_argument("per-locus data must have n entries");
    const std::size_t table_size = 1ull << (nk.k + 1);
    for (int locus = 0; locus < nk.n; ++locus) {
        const auto& nbrs = nk.neighbors[locus];
        if (static_cast<int>(nbrs.size()) != nk.k)
            throw std::invalid_argument("neighbor list must have k entries");
        std::vector<int> sorted = nbrs;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= nk.n || sorted[i] == locus)
                throw std::invalid_argument("neighbor out of range or self");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw std::invalid_argument("duplicate neighbor");
        }
        if (nk.tables[locus].size() != table_size)
            throw std::invalid_argument("table must have 2^(k+1) entries");
        for (double v : nk.tables[locus])
            if (v < 0.0 || v > 1.0) throw std::invalid_argument("table entries must be in [0, 1]");
    }
}

NKLandscape generate_nk(int n, int k, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (k < 0 || k > n - 1) throw std::invalid_argument("k must be in [0, n-1]");
    check_table_budget(n, k);
    NKLandscape nk;
    nk.n = n;
    nk.k = k;
    nk.seed = seed;
    nk.neighbors.resize(n);
    nk.tables.resize(n);
    Rng rng(seed);
    const std::size_t table_size = 1ull << (k + 1);
    for (int locus = 0; locus < n; ++locus) {
        // draw from the other n-1 loci, shifting past self
        std::vector<int> picks = rng.sample_without_replacement(n - 1, k);
        for (int& p : picks)
            if (p >= locus) ++p;
        nk.neighbors[locus] = std::move(picks);
        nk.tables[locus].resize(table_size);
        for (double& v : nk.tables[locus]) v = rng.uniform01();
    }
    return nk;
}

double evaluate_nk(const NKLandscape& nk, std::span<const int> bits) {
    if (static_cast<int>(bits.size()) != nk.n) throw std::invalid_argument("point length mismatch");
    double sum = 0.0;
    for (int locus = 0; locus < nk.n; ++locus) {
        std::size_t idx = static_cast<std::size_t>(bits[locus]);
        for (int nb : nk.neighbors[locus]) idx = (idx << 1) | static_cast<std::size_t>(bits[nb]);
        sum += nk.tables[locus][idx];
    }
    return sum / nk.n;
}

double evaluate_nk(const NKLandscape& nk, std::uint64_t y) {
    double sum = 0.0;
    for (int locus = 0; locus < nk.n; ++locus) {
        std::size_t idx = (y >> locus) & 1u;
        for (int nb : nk.neighbors[locus]) idx = (idx << 1) | ((y >> nb) & 1u);
        sum += nk.tables[locus][idx];
    }
    return sum / nk.n;
}

}  // namespace nmland
