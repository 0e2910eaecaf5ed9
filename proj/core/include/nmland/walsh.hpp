#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nmland/model.hpp"

namespace nmland {

// Sparse polynomial over the parity basis on bit strings of length q.
// Partition indices are interpreted bitwise: bit i-1 of j selects feature i
// (the same convention Term::mask uses), so conversions are mask-for-mask.
struct WalshPolynomial {
    int q = 0;
    std::vector<std::pair<std::uint64_t, double>> omega;  // unique indices, nonzero

    bool operator==(const WalshPolynomial&) const = default;
};

void validate_walsh(const WalshPolynomial& w);  // throws std::invalid_argument

// Parity basis function: +1 when (y AND j) has an even number of set bits,
// -1 otherwise.
int psi(std::uint64_t j, std::uint64_t y);

double evaluate_walsh(const WalshPolynomial& w, std::uint64_t y);
// Bit-sequence overload; bits[i] is y_{i+1}, values must be 0/1.
double evaluate_walsh(const WalshPolynomial& w, std::span<const int> bits);

// Exact conversion for models on the two-level {-1, 1} alphabet. The sign of
// each coefficient flips with odd interaction order so that the polynomial
// and the model agree pointwise under bit=1 <-> feature=+1.
WalshPolynomial to_walsh(const InteractionModel& m);

// Inverse mapping. The result is kind General (coefficients may be negative)
// on the {-1, 1} alphabet; zero coefficients are dropped.
InteractionModel from_walsh(const WalshPolynomial& w);

}  // namespace nmland
