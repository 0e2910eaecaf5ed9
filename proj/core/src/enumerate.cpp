#include "nmland/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nmland {

namespace {

EvaluatedLandscape make_table(int n, int arity, std::vector<double> levels, std::uint64_t budget) {
    const std::uint64_t count = enumeration_point_count(n, arity);
    if (count > budget)
        throw BudgetError(count, budget,
                          "enumeration needs " + std::to_string(count) + " evaluations, budget is " +
                              std::to_string(budget));
    EvaluatedLandscape el;
    el.n = n;
    el.arity = arity;
    el.levels = std::move(levels);
    el.fitness.assign(count, 0.0);
    el.radix.resize(n);
    std::uint64_t r = 1;
    for (int f = 0; f < n; ++f) {
        el.radix[f] = r;
        r *= static_cast<std::uint64_t>(arity);
    }
    return el;
}

bool symmetric_binary(const Alphabet& alphabet) {
    return alphabet.arity == 2 && alphabet.a == alphabet.b;
}

// Sign-flip accumulation: each term adds +/- (coeff * b^order) depending on
// the parity of its cleared bits. Bit-exact against evaluate() because the
// per-term magnitudes follow the same multiplication sequence.
void accumulate_binary(EvaluatedLandscape& el, const Alphabet& alphabet,
                       std::span<const Term> terms) {
    const std::uint64_t count = el.size();
    for (const Term& t : terms) {
        double scaled = t.coeff;
        for (int j = 0; j < t.order(); ++j) scaled *= alphabet.b;
        const std::uint64_t mask = t.mask();
        for (std::uint64_t g = 0; g < count; ++g)
            el.fitness[g] += (std::popcount(mask & ~g) % 2 == 0) ? scaled : -scaled;
    }
}

void accumulate_generic(EvaluatedLandscape& el, const Alphabet& alphabet,
                        std::span<const Term> terms) {
    const std::vector<double> levels = alphabet.levels();
    const std::uint64_t count = el.size();
    for (const Term& t : terms) {
        for (std::uint64_t g = 0; g < count; ++g) {
            double prod = t.coeff;
            for (int i : t.indices) prod *= levels[el.digit(g, i - 1)];
            el.fitness[g] += prod;
        }
    }
}

}  // namespace

std::uint64_t enumeration_point_count(int n, int arity) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (arity < 2) throw std::invalid_argument("arity must be >= 2");
    std::uint64_t count = 1;
    for (int f = 0; f < n; ++f) {
        if (count > (1ull << 62) / static_cast<std::uint64_t>(arity))
            throw std::invalid_argument("point count overflows");
        count *= static_cast<std::uint64_t>(arity);
    }
    return count;
}

EvaluatedLandscape enumerate(const InteractionModel& m, std::uint64_t budget) {
    if (m.alphabet.real_valued())
        throw UnsupportedError("cannot enumerate a real-valued alphabet");
    EvaluatedLandscape el = make_table(m.n, m.alphabet.arity, m.alphabet.levels(), budget);

    if (symmetric_binary(m.alphabet)) {
        accumulate_binary(el, m.alphabet, m.terms);
    } else {
        // Odometer walk; per point the sum runs in canonical term order, so
        // the table matches evaluate() exactly.
        std::vector<int> digits(m.n, 0);
        Point x(m.n, el.levels[0]);
        for (std::uint64_t g = 0;; ++g) {
            double sum = 0.0;
            for (const Term& t : m.terms) {
                double prod = t.coeff;
                for (int i : t.indices) prod *= x[i - 1];
                sum += prod;
            }
            el.fitness[g] = sum;
            int f = 0;
            while (f < m.n && digits[f] == m.alphabet.arity - 1) {
                digits[f] = 0;
                x[f] = el.levels[0];
                ++f;
            }
            if (f == m.n) break;
            ++digits[f];
            x[f] = el.levels[digits[f]];
        }
    }

    bool definition_holds = true;
    for (const Term& t : m.terms)
        if (t.coeff <= 0.0) definition_holds = false;
    if (definition_holds) {
        el.optimum_index = el.size() - 1;  // all features at level b
    } else {
        el.optimum_index = static_cast<std::uint64_t>(
            std::max_element(el.fitness.begin(), el.fitness.end()) - el.fitness.begin());
    }
    return el;
}

EvaluatedLandscape enumerate(const NKLandscape& nk, std::uint64_t budget) {
    validate_nk(nk);
    EvaluatedLandscape el = make_table(nk.n, 2, {}, budget);
    const std::uint64_t count = el.size();
    for (std::uint64_t y = 0; y < count; ++y) el.fitness[y] = evaluate_nk(nk, y);
    el.optimum_index = static_cast<std::uint64_t>(
        std::max_element(el.fitness.begin(), el.fitness.end()) - el.fitness.begin());
    return el;
}

void accumulate_terms(EvaluatedLandscape& el, const Alphabet& alphabet,
                      std::span<const Term> terms) {
    if (symmetric_binary(alphabet)) accumulate_binary(el, alphabet, terms);
    else accumulate_generic(el, alphabet, terms);
}

Point point_at(const EvaluatedLandscape& el, std::uint64_t index) {
    if (el.levels.empty()) throw std::invalid_argument("no level values recorded for this table");
    Point x(el.n);
    for (int f = 0; f < el.n; ++f) x[f] = el.levels[el.digit(index, f)];
    return x;
}

int step_distance(const EvaluatedLandscape& el, std::uint64_t lhs, std::uint64_t rhs) {
    int d = 0;
    for (int f = 0; f < el.n; ++f) d += std::abs(el.digit(lhs, f) - el.digit(rhs, f));
    return d;
}

}  // namespace nmland
