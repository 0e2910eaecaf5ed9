#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nmland/errors.hpp"
#include "nmland/model.hpp"
#include "nmland/nk.hpp"

namespace nmland {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1ull << 26;

// Exhaustive fitness table over a finite-arity point set. Points are indexed
// mixed-radix with feature 1 as the least significant digit; digit d of a
// feature selects alphabet level d, so for binary landscapes the index is
// exactly the genome bit pattern.
struct EvaluatedLandscape {
    int n = 0;
    int arity = 2;
    std::vector<double> levels;        // alphabet levels (empty for table-only sources)
    std::vector<double> fitness;       // arity^n entries
    std::vector<std::uint64_t> radix;  // radix[f] = arity^f
    std::uint64_t optimum_index = 0;   // a global maximum (the proven one when known)

    std::uint64_t size() const { return fitness.size(); }
    int digit(std::uint64_t index, int feature) const {
        return static_cast<int>((index / radix[feature]) % static_cast<std::uint64_t>(arity));
    }
};

// arity^n with an overflow check; throws std::invalid_argument if it cannot
// be represented.
std::uint64_t enumeration_point_count(int n, int arity);

// Throws BudgetError when the point count exceeds the budget, and
// UnsupportedError for real-valued alphabets.
EvaluatedLandscape enumerate(const InteractionModel& m,
                             std::uint64_t budget = kDefaultEnumerationBudget);
EvaluatedLandscape enumerate(const NKLandscape& nk,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// Adds the contribution of extra terms to every table entry, for nested
// term schedules. The caller keeps optimum_index valid (it does not move for
// NM models, whose maximum stays at the all-b point).
void accumulate_terms(EvaluatedLandscape& el, const Alphabet& alphabet,
                      std::span<const Term> terms);

// The coordinates of a point; requires levels to be present.
Point point_at(const EvaluatedLandscape& el, std::uint64_t index);

// Number of coordinate steps between two points.
int step_distance(const EvaluatedLandscape& el, std::uint64_t lhs, std::uint64_t rhs);

// Visits the indices reachable by moving one feature one level up or down.
template <class Fn>
void for_each_neighbor(const EvaluatedLandscape& el, std::uint64_t index, Fn&& fn) {
    if (el.arity == 2) {  // every feature flips
        for (int f = 0; f < el.n; ++f) fn(index ^ (1ull << f));
        return;
    }
    for (int f = 0; f < el.n; ++f) {
        const int d = el.digit(index, f);
        if (d > 0) fn(index - el.radix[f]);
        if (d < el.arity - 1) fn(index + el.radix[f]);
    }
}

}  // namespace nmland
