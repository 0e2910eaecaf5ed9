#include "nmland/builders.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace nmland {

namespace {

// Enough for every experiment in this project; guards against accidental
// build_type1_master(40, ...) style requests.
constexpr std::uint64_t kMaxTerms = 1ull << 22;

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = i + 1;
    while (true) {
        fn(combo);
        int pos = k - 1;
        while (pos >= 0 && combo[pos] == n - (k - 1 - pos)) --pos;
        if (pos < 0) return;
        ++combo[pos];
        for (int j = pos + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
}

bool odd_count_is_odd(const std::vector<int>& indices) {
    int odd = 0;
    for (int i : indices) odd += (i % 2 != 0);
    return odd % 2 == 1;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Draws coefficients in canonical term order so identical (n, sigma, seed)
// always yield identical models.
InteractionModel assemble(int n, std::vector<Term> terms, Alphabet alphabet, Kind kind,
                          double sigma, std::uint64_t seed, bool include_constant) {
    Rng rng(seed);
    if (include_constant) terms.insert(terms.begin(), Term{{}, 0.0});
    std::sort(terms.begin(), terms.end(), term_less);
    for (Term& t : terms) t.coeff = sample_coefficient(sigma, rng);
    InteractionModel m{n, std::move(terms), alphabet, kind, sigma, seed};
    validate_model(m);
    return m;
}

}  // namespace

double sample_coefficient(double sigma, Rng& rng) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    return std::exp(-std::abs(rng.normal(sigma)));
}

std::uint64_t complete_term_count(int n, int max_order) {
    std::uint64_t count = 0;
    for (int k = 1; k <= max_order; ++k) {
        count += binomial(n, k);
        if (count > kMaxTerms) throw std::invalid_argument("model would exceed the term-count cap");
    }
    return count;
}

InteractionModel build_type1_complete(int n, int max_order, double sigma,
                                      std::uint64_t seed, const BuildOptions& opts) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (max_order < 1 || max_order > n) throw std::invalid_argument("max_order must be in [1, n]");
    complete_term_count(n, max_order);
    std::vector<Term> terms;
    for (int k = 1; k <= max_order; ++k)
        for_each_combination(n, k, [&](const std::vector<int>& c) { terms.push_back(Term{c, 0.0}); });
    return assemble(n, std::move(terms), opts.alphabet, Kind::TypeI, sigma, seed, opts.include_constant);
}

InteractionModel build_type1_master(int n, double sigma, std::uint64_t seed,
                                    const BuildOptions& opts) {
    return build_type1_complete(n, n, sigma, seed, opts);
}

InteractionModel build_type1_proportion(int n, double proportion, double sigma,
                                        std::uint64_t seed, const BuildOptions& opts) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (proportion < 0.0 || proportion > 1.0) throw std::invalid_argument("proportion must be in [0, 1]");
    std::vector<Term> terms;
    for (int i = 1; i <= n; ++i) terms.push_back(Term{{i}, 0.0});

    std::vector<Term> pairs;
    for_each_combination(n, 2, [&](const std::vector<int>& c) { pairs.push_back(Term{c, 0.0}); });
    // round half up on the pair count
    const int want = static_cast<int>(std::floor(proportion * static_cast<double>(pairs.size()) + 0.5));

    Rng rng = Rng::substream(seed, 0x70617274ull);  // term-choice stream, distinct from coefficients
    std::vector<int> chosen = rng.sample_without_replacement(static_cast<int>(pairs.size()), want);
    for (int idx : chosen) terms.push_back(pairs[idx]);
    return assemble(n, std::move(terms), opts.alphabet, Kind::TypeI, sigma, seed, opts.include_constant);
}

InteractionModel build_type2(int n, int max_order, double sigma, std::uint64_t seed,
                             int arity, bool include_constant) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (max_order < 1 || max_order > n) throw std::invalid_argument("max_order must be in [1, n]");
    complete_term_count(n, max_order);
    std::vector<Term> terms;
    for (int k = 1; k <= max_order; ++k)
        for_each_combination(n, k, [&](const std::vector<int>& c) {
            if (odd_count_is_odd(c)) terms.push_back(Term{c, 0.0});
        });
    return assemble(n, std::move(terms), Alphabet{1.0, 1.0, arity}, Kind::TypeII, sigma, seed,
                    include_constant);
}

InteractionModel build_type3(int n, int max_order, double sigma, std::uint64_t seed,
                             Alphabet alphabet) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (max_order % 2 == 0) throw std::invalid_argument("TypeIII max_order must be odd");
    if (max_order < 1 || max_order > n) throw std::invalid_argument("max_order must be in [1, n]");
    complete_term_count(n, max_order);
    std::vector<Term> terms;
    for (int k = 1; k <= max_order; k += 2)
        for_each_combination(n, k, [&](const std::vector<int>& c) { terms.push_back(Term{c, 0.0}); });
    return assemble(n, std::move(terms), alphabet, Kind::TypeIII, sigma, seed, false);
}

void visit_subset_schedule(const InteractionModel& master, Rng& rng, int group_size,
                           const std::function<void(const InteractionModel&,
                                                    std::span<const Term>)>& visit) {
    if (group_size < 1) throw std::invalid_argument("group_size must be >= 1");

    // Base model: every main effect present in the master (plus its constant
    // term, if any).
    std::vector<Term> base;
    std::map<int, std::vector<Term>> higher;  // order -> terms, order >= 2
    for (const Term& t : master.terms) {
        if (t.order() <= 1) base.push_back(t);
        else higher[t.order()].push_back(t);
    }
    if (base.empty() || base.back().order() != 1)
        throw std::invalid_argument("schedule master has no main effects");

    InteractionModel current{master.n, base, master.alphabet, master.kind,
                             master.sigma, master.seed};
    visit(current, std::span<const Term>(base));

    std::vector<Term> added;
    for (auto& [order, terms] : higher) {
        std::shuffle(terms.begin(), terms.end(), rng.engine());
        std::size_t next = 0;
        while (next < terms.size()) {
            const std::size_t take = std::min<std::size_t>(group_size, terms.size() - next);
            added.assign(terms.begin() + next, terms.begin() + next + take);
            next += take;
            std::sort(added.begin(), added.end(), term_less);
            auto mid = current.terms.insert(current.terms.end(), added.begin(), added.end());
            std::inplace_merge(current.terms.begin(), mid, current.terms.end(), term_less);
            visit(current, std::span<const Term>(added));
        }
    }
}

std::vector<InteractionModel> subset_schedule(const InteractionModel& master, Rng& rng,
                                              int group_size) {
    std::vector<InteractionModel> schedule;
    visit_subset_schedule(master, rng, group_size,
                          [&](const InteractionModel& m, std::span<const Term>) {
                              schedule.push_back(m);
                          });
    return schedule;
}

InteractionModel resample_coefficients_uniform(const InteractionModel& m, std::uint64_t seed) {
    Rng rng(seed);
    InteractionModel out = m;
    out.seed = seed;
    for (Term& t : out.terms) {
        double u = rng.uniform01();
        t.coeff = u > 0.0 ? u : 1.0;  // (0, 1]
    }
    return out;
}

}  // namespace nmland
