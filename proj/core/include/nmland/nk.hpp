#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nmland {

// Classic tunably rugged binary landscape: each locus contributes a table
// lookup keyed by its own state and the states of k other loci; fitness is
// the mean contribution. Loci are 0-based internally.
struct NKLandscape {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> neighbors;  // per locus: k distinct other loci
    std::vector<std::vector<double>> tables;  // per locus: 2^(k+1) values in [0, 1]
};

void validate_nk(const NKLandscape& nk);  // throws std::invalid_argument

// Random neighborhoods (distinct, self excluded), table entries i.i.d.
// uniform on [0, 1]. Deterministic per seed.
NKLandscape generate_nk(int n, int k, std::uint64_t seed);

// bits[i] is the state of locus i. Table rows are indexed with the locus bit
// as the high bit and neighbor bits following in list order.
double evaluate_nk(const NKLandscape& nk, std::span<const int> bits);

// Same landscape with the point packed as bit i of y = locus i.
double evaluate_nk(const NKLandscape& nk, std::uint64_t y);

}  // namespace nmland
