#include "nmland/walsh.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace nmland {

void validate_walsh(const WalshPolynomial& w) {
    if (w.q < 1 || w.q > 63) throw std::invalid_argument("bit-string length must be in [1, 63]");
    const std::uint64_t limit = 1ull << w.q;
    std::set<std::uint64_t> seen;
    for (const auto& [j, coeff] : w.omega) {
        if (j >= limit) throw std::invalid_argument("partition index out of range");
        if (!seen.insert(j).second) throw std::invalid_argument("duplicate partition index");
        if (coeff == 0.0) throw std::invalid_argument("zero coefficients must be omitted");
    }
}

int psi(std::uint64_t j, std::uint64_t y) {
    return (std::popcount(j & y) % 2 == 0) ? 1 : -1;
}

double evaluate_walsh(const WalshPolynomial& w, std::uint64_t y) {
    double sum = 0.0;
    for (const auto& [j, coeff] : w.omega) sum += (std::popcount(j & y) % 2 == 0) ? coeff : -coeff;
    return sum;
}

double evaluate_walsh(const WalshPolynomial& w, std::span<const int> bits) {
    if (static_cast<int>(bits.size()) != w.q) throw std::invalid_argument("bit-string length mismatch");
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("bits must be 0 or 1");
        y |= static_cast<std::uint64_t>(bits[i]) << i;
    }
    return evaluate_walsh(w, y);
}

namespace {

void require_two_level_unit(const Alphabet& alphabet) {
    if (alphabet.arity != 2 || alphabet.a != 1.0 || alphabet.b != 1.0)
        throw UnsupportedError("conversion is defined on the two-level {-1, 1} alphabet");
}

}  // namespace

WalshPolynomial to_walsh(const InteractionModel& m) {
    require_two_level_unit(m.alphabet);
    if (m.n > 63) throw UnsupportedError("conversion requires n <= 63");
    WalshPolynomial w;
    w.q = m.n;
    w.omega.reserve(m.terms.size());
    // Entries keep the canonical term order, so the polynomial sums its
    // coefficients in exactly the sequence evaluate() does and the two
    // functions agree bit for bit, not just to rounding.
    for (const Term& t : m.terms) {
        const double sign = (t.order() % 2 == 0) ? 1.0 : -1.0;
        w.omega.emplace_back(t.mask(), sign * t.coeff);
    }
    validate_walsh(w);
    return w;
}

InteractionModel from_walsh(const WalshPolynomial& w) {
    validate_walsh(w);
    InteractionModel m;
    m.n = w.q;
    m.alphabet = Alphabet::binary();
    m.kind = Kind::General;
    for (const auto& [j, coeff] : w.omega) {
        Term t;
        for (int i = 0; i < w.q; ++i)
            if (j & (1ull << i)) t.indices.push_back(i + 1);
        const double sign = (std::popcount(j) % 2 == 0) ? 1.0 : -1.0;
        t.coeff = sign * coeff;
        m.terms.push_back(std::move(t));
    }
    std::sort(m.terms.begin(), m.terms.end(), term_less);
    validate_model(m);
    return m;
}

}  // namespace nmland
