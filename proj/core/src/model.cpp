#include "nmland/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nmland {

namespace {

bool odd_index_count_is_odd(const Term& t) {
    int odd = 0;
    for (int i : t.indices) odd += (i % 2 != 0);
    return odd % 2 == 1;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double Alphabet::level(int i) const {
    if (real_valued() || i < 0 || i >= arity) throw std::invalid_argument("level index out of range");
    if (i == 0) return -a;  // endpoints are exact, interior levels interpolate
    if (i == arity - 1) return b;
    return -a + (b + a) * (static_cast<double>(i) / (arity - 1));
}

std::vector<double> Alphabet::levels() const {
    if (real_valued()) throw std::invalid_argument("real-valued alphabet has no level set");
    std::vector<double> out(arity);
    for (int i = 0; i < arity; ++i) out[i] = level(i);
    return out;
}

bool Alphabet::admissible(double value) const {
    if (value < -a || value > b) return false;
    if (real_valued()) return true;
    for (int i = 0; i < arity; ++i)
        if (value == level(i)) return true;
    return false;
}

void Alphabet::validate() const {
    require(a > 0.0, "alphabet lower bound magnitude must be positive");
    require(b >= a, "alphabet upper bound must be >= |lower bound|");
    require(arity == kRealArity || arity >= 2, "alphabet arity must be >= 2 or real");
}

std::uint64_t Term::mask() const {
    std::uint64_t m = 0;
    for (int i : indices) {
        if (i < 1 || i > 64) throw std::invalid_argument("term index out of mask range");
        m |= 1ull << (i - 1);
    }
    return m;
}

bool term_less(const Term& lhs, const Term& rhs) {
    if (lhs.indices.size() != rhs.indices.size()) return lhs.indices.size() < rhs.indices.size();
    return lhs.indices < rhs.indices;
}

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::TypeI: return "type1";
        case Kind::TypeII: return "type2";
        case Kind::TypeIII: return "type3";
        case Kind::General: return "general";
    }
    throw std::invalid_argument("bad kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "type1") return Kind::TypeI;
    if (name == "type2") return Kind::TypeII;
    if (name == "type3") return Kind::TypeIII;
    if (name == "general") return Kind::General;
    throw std::invalid_argument("unknown kind: " + name);
}

int InteractionModel::max_order() const {
    int m = 0;
    for (const Term& t : terms) m = std::max(m, t.order());
    return m;
}

bool InteractionModel::has_constant_term() const {
    return !terms.empty() && terms.front().indices.empty();
}

double InteractionModel::constant_term() const {
    return has_constant_term() ? terms.front().coeff : 0.0;
}

bool same_landscape(const InteractionModel& lhs, const InteractionModel& rhs) {
    return lhs.n == rhs.n && lhs.alphabet == rhs.alphabet && lhs.terms == rhs.terms;
}

void validate_model(const InteractionModel& m) {
    require(m.n >= 1, "model needs at least one feature");
    m.alphabet.validate();
    for (std::size_t k = 0; k < m.terms.size(); ++k) {
        const Term& t = m.terms[k];
        for (std::size_t j = 1; j < t.indices.size(); ++j)
            require(t.indices[j - 1] < t.indices[j], "term indices must be strictly increasing");
        if (!t.indices.empty())
            require(t.indices.front() >= 1 && t.indices.back() <= m.n, "term index out of range");
        require(t.coeff != 0.0, "zero-coefficient terms must be omitted");
        if (m.kind != Kind::General)
            require(t.coeff > 0.0, "coefficients must be positive for NM models");
        if (k > 0) {
            require(term_less(m.terms[k - 1], t), "terms must be canonically sorted and unique");
        }
    }
    if (m.kind == Kind::TypeII) {
        require(m.alphabet.a == 1.0 && m.alphabet.b == 1.0, "TypeII requires the [-1,1] range");
        for (const Term& t : m.terms)
            if (!t.indices.empty())
                require(odd_index_count_is_odd(t), "TypeII terms need an odd number of odd indices");
    }
    if (m.kind == Kind::TypeIII) {
        for (const Term& t : m.terms)
            require(t.order() % 2 == 1, "TypeIII admits only odd-order terms");
    }
}

double evaluate(const InteractionModel& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.n) throw std::invalid_argument("point dimension mismatch");
    double sum = 0.0;
    for (const Term& t : m.terms) {
        double prod = t.coeff;
        for (int i : t.indices) prod *= x[i - 1];
        sum += prod;
    }
    return sum;
}

std::vector<double> power_table(double base, int max_exponent) {
    std::vector<double> pow(max_exponent + 1);
    pow[0] = 1.0;
    for (int k = 1; k <= max_exponent; ++k) pow[k] = pow[k - 1] * base;
    return pow;
}

namespace {

void require_definition_constraints(const InteractionModel& m, const char* what) {
    if (m.kind != Kind::General) return;
    for (const Term& t : m.terms)
        if (t.coeff <= 0.0)
            throw UnsupportedError(std::string(what) + " requires nonnegative coefficients");
}

}  // namespace

Point max_location(const InteractionModel& m) {
    require_definition_constraints(m, "max_location");
    return Point(m.n, m.alphabet.b);
}

double max_value(const InteractionModel& m) {
    require_definition_constraints(m, "max_value");
    double sum = 0.0;
    for (const Term& t : m.terms) {
        // Same multiplication sequence as evaluate() at [b, ..., b], so the
        // two agree bit for bit.
        double prod = t.coeff;
        for (int j = 0; j < t.order(); ++j) prod *= m.alphabet.b;
        sum += prod;
    }
    return sum;
}

bool has_known_min(const InteractionModel& m) {
    if (m.kind == Kind::TypeII) return true;
    return m.kind == Kind::TypeIII && m.alphabet.symmetric();
}

Point min_location(const InteractionModel& m) {
    if (m.kind == Kind::TypeII) {
        Point p(m.n);
        for (int i = 1; i <= m.n; ++i) p[i - 1] = (i % 2 == 1) ? -1.0 : 1.0;
        return p;
    }
    if (m.kind == Kind::TypeIII) {
        if (!m.alphabet.symmetric())
            throw UnsupportedError("TypeIII minimum is only proven for symmetric alphabets");
        return Point(m.n, -m.alphabet.a);
    }
    throw UnsupportedError("global minimum unknown for " + kind_name(m.kind) + " models");
}

double min_value(const InteractionModel& m) {
    const Point loc = min_location(m);
    return evaluate(m, loc);
}

double min_value_closed_form(const InteractionModel& m) {
    if (m.has_constant_term())
        throw UnsupportedError("closed-form minimum is only used for models without a constant term");
    if (m.kind == Kind::TypeII) {
        double sum = 0.0;
        for (const Term& t : m.terms) sum += t.coeff;
        return -sum;
    }
    if (m.kind == Kind::TypeIII && m.alphabet.symmetric()) {
        const std::vector<double> apow = power_table(m.alphabet.a, m.max_order());
        double sum = 0.0;
        for (const Term& t : m.terms) sum += t.coeff * apow[t.order()];
        return -sum;
    }
    throw UnsupportedError("closed-form minimum unknown for this model");
}

double normalize_by_max(const InteractionModel& m, double f) {
    const double fmax = max_value(m);
    if (fmax == 0.0) throw std::domain_error("cannot normalize by a zero maximum");
    return f / fmax;
}

double normalize_minmax(const InteractionModel& m, double f) {
    const double fmax = max_value(m);
    const double fmin = min_value(m);
    if (fmax == fmin) throw std::domain_error("degenerate fitness range");
    return (f - fmin) / (fmax - fmin);
}

BinaryEvaluator::BinaryEvaluator(const InteractionModel& m) : n_(m.n) {
    if (m.alphabet.arity != 2) throw UnsupportedError("BinaryEvaluator requires a binary alphabet");
    if (m.n > 64) throw UnsupportedError("BinaryEvaluator requires n <= 64");
    const int max_order = m.max_order();
    masks_.reserve(m.terms.size());
    scaled_coeffs_.reserve(m.terms.size());
    for (const Term& t : m.terms) {
        masks_.push_back(t.mask());
        // Multiply out sequentially so the rounding sequence matches the
        // product loop in evaluate().
        double scaled = t.coeff;
        for (int j = 0; j < t.order(); ++j) scaled *= m.alphabet.b;
        scaled_coeffs_.push_back(scaled);
    }
    // Every cleared bit multiplies the term value by -a/b; for symmetric
    // alphabets this is exactly a sign flip.
    flip_pow_ = power_table(-m.alphabet.a / m.alphabet.b, max_order);
}

double BinaryEvaluator::operator()(std::uint64_t genome) const {
    double sum = 0.0;
    const std::size_t count = masks_.size();
    for (std::size_t k = 0; k < count; ++k) {
        const int zeros = std::popcount(masks_[k] & ~genome);
        sum += scaled_coeffs_[k] * flip_pow_[zeros];
    }
    return sum;
}

}  // namespace nmland
