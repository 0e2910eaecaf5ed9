#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nmland/errors.hpp"

namespace nmland {

// Feature domain shared by all features: `arity` evenly spaced levels on
// [-a, b] with both endpoints included, or kRealArity for a continuous
// domain. The range must span negative to positive with a <= b.
struct Alphabet {
    double a = 1.0;  // magnitude of the lower bound; the range is [-a, b]
    double b = 1.0;
    int arity = 2;   // number of levels, >= 2; kRealArity marks real-valued

    static constexpr int kRealArity = 0;

    static Alphabet binary() { return Alphabet{1.0, 1.0, 2}; }

    bool real_valued() const { return arity == kRealArity; }
    bool symmetric() const { return a == b; }

    double level(int i) const;            // i in [0, arity)
    std::vector<double> levels() const;
    bool admissible(double value) const;
    void validate() const;  // throws std::invalid_argument

    bool operator==(const Alphabet&) const = default;
};

// One product term: a coefficient times the product of the named features.
// Indices are 1-based and strictly increasing; an empty index set is the
// constant term.
struct Term {
    std::vector<int> indices;
    double coeff = 0.0;

    int order() const { return static_cast<int>(indices.size()); }
    std::uint64_t mask() const;  // bit i-1 set for feature i; requires indices <= 64

    bool operator==(const Term&) const = default;
};

// Canonical ordering: by interaction order, then lexicographically by index.
bool term_less(const Term& lhs, const Term& rhs);

enum class Kind { TypeI, TypeII, TypeIII, General };

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

// Sparse interaction model: fitness is the sum over terms of the coefficient
// times the product of the features in the term's index set. TypeI/II/III
// models carry positive coefficients and a proven global maximum at
// [b, ..., b]; General admits arbitrary nonzero coefficients and is
// evaluate-only.
struct InteractionModel {
    int n = 0;
    std::vector<Term> terms;  // canonically sorted, index sets unique
    Alphabet alphabet;
    Kind kind = Kind::General;
    double sigma = 0.0;       // coefficient spread used at construction
    std::uint64_t seed = 0;   // construction seed

    int term_count() const { return static_cast<int>(terms.size()); }
    int max_order() const;
    bool has_constant_term() const;
    double constant_term() const;  // 0 when absent

    bool operator==(const InteractionModel&) const = default;
};

using Point = std::vector<double>;

// Structural identity: same feature count, alphabet and term list. Ignores
// kind and construction provenance (sigma, seed).
bool same_landscape(const InteractionModel& lhs, const InteractionModel& rhs);

// Throws std::invalid_argument when any invariant fails (term ordering,
// duplicate index sets, coefficient signs, kind-specific constraints).
void validate_model(const InteractionModel& m);

double evaluate(const InteractionModel& m, std::span<const double> x);

// Powers b^0..b^k computed by repeated multiplication, matching the rounding
// sequence of the product loop in evaluate().
std::vector<double> power_table(double base, int max_exponent);

// Proven extremes. max_* require nonnegative coefficients (always true for
// the NM kinds; checked for General). min_* require a kind with a proven
// minimizer: TypeII, or TypeIII with a symmetric alphabet.
Point max_location(const InteractionModel& m);
double max_value(const InteractionModel& m);  // O(m); equals evaluate() at max_location exactly

bool has_known_min(const InteractionModel& m);
Point min_location(const InteractionModel& m);
double min_value(const InteractionModel& m);  // evaluates the model at min_location

// Closed-form minimum for TypeII/TypeIII models without a constant term;
// kept as an independent cross-check of min_value.
double min_value_closed_form(const InteractionModel& m);

// f / F_max, <= 1 for any landscape fitness.
double normalize_by_max(const InteractionModel& m, double f);
// (f - F_min) / (F_max - F_min), in [0, 1] for any landscape fitness.
double normalize_minmax(const InteractionModel& m, double f);

// Flat term view for fast repeated evaluation of binary models with n <= 64.
// Genome bit i-1 set means feature i sits at level b, clear means level -a.
// For symmetric alphabets the result is bit-identical to evaluate().
class BinaryEvaluator {
public:
    explicit BinaryEvaluator(const InteractionModel& m);

    double operator()(std::uint64_t genome) const;
    int n() const { return n_; }

private:
    int n_ = 0;
    std::vector<std::uint64_t> masks_;
    std::vector<double> scaled_coeffs_;  // coeff * b^order
    std::vector<double> flip_pow_;       // (-a/b)^z for z cleared bits in the mask
};

}  // namespace nmland
