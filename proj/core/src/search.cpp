#include "nmland/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nmland/parallel.hpp"
#include "nmland/stats.hpp"

namespace nmland {

namespace {

constexpr double kOptimumRelTol = 1e-9;

int level_index_of(const Alphabet& alphabet, double value) {
    for (int d = 0; d < alphabet.arity; ++d)
        if (alphabet.level(d) == value) return d;
    throw std::invalid_argument("point value is not an alphabet level");
}

}  // namespace

HillClimbResult hill_climb(const InteractionModel& m, const Point& start) {
    if (m.alphabet.real_valued()) throw UnsupportedError("hill climbing requires a finite arity");
    if (static_cast<int>(start.size()) != m.n) throw std::invalid_argument("point dimension mismatch");
    const std::vector<double> levels = m.alphabet.levels();
    const int arity = m.alphabet.arity;

    std::vector<int> digits(m.n);
    for (int f = 0; f < m.n; ++f) digits[f] = level_index_of(m.alphabet, start[f]);

    Point x(m.n);
    auto to_point = [&](const std::vector<int>& d) {
        for (int f = 0; f < m.n; ++f) x[f] = levels[d[f]];
        return std::span<const double>(x);
    };
    auto index_of = [&](const std::vector<int>& d) {
        std::uint64_t idx = 0, r = 1;
        for (int f = 0; f < m.n; ++f) {
            idx += static_cast<std::uint64_t>(d[f]) * r;
            r *= static_cast<std::uint64_t>(arity);
        }
        return idx;
    };

    double current = evaluate(m, to_point(digits));
    HillClimbResult result;
    while (true) {
        double best = current;
        std::uint64_t best_index = 0;
        int best_feature = -1, best_digit = 0;
        std::vector<int> cand = digits;
        for (int f = 0; f < m.n; ++f) {
            for (int delta : {-1, +1}) {
                const int d = digits[f] + delta;
                if (d < 0 || d >= arity) continue;
                cand[f] = d;
                const double fit = evaluate(m, to_point(cand));
                if (fit > best ||
                    (fit == best && best_feature >= 0 && index_of(cand) < best_index)) {
                    best = fit;
                    best_index = index_of(cand);
                    best_feature = f;
                    best_digit = d;
                }
            }
            cand[f] = digits[f];
        }
        if (best_feature < 0) break;  // local peak
        digits[best_feature] = best_digit;
        current = best;
        ++result.steps;
    }
    to_point(digits);
    result.point = x;
    result.fitness = current;
    return result;
}

void GaConfig::validate() const {
    if (population_size < 2 || population_size % 2 != 0)
        throw std::invalid_argument("population_size must be even and >= 2");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw std::invalid_argument("crossover_rate must be in [0, 1]");
    if (mutation_rate > 1.0) throw std::invalid_argument("mutation_rate must be <= 1");
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
}

GaConfig ga_config_from_text(const std::string& text) {
    GaConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, eq, value;
        std::istringstream fields(line);
        if (!(fields >> key)) continue;  // blank line
        fields >> eq;
        if (eq == "=") fields >> value;
        else value = eq;
        if (value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing value");
        auto as_bool = [&]() {
            if (value == "true" || value == "1") return true;
            if (value == "false" || value == "0") return false;
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected a boolean");
        };
        if (key == "population_size") config.population_size = std::stoi(value);
        else if (key == "crossover_rate") config.crossover_rate = std::stod(value);
        else if (key == "mutation_rate") config.mutation_rate = std::stod(value);
        else if (key == "generations") config.generations = std::stoi(value);
        else if (key == "runs") config.runs = std::stoi(value);
        else if (key == "selection") {
            if (value == "proportionate") config.selection = Selection::Proportionate;
            else if (value == "rank") config.selection = Selection::Rank;
            else throw std::invalid_argument("unknown selection scheme: " + value);
        } else if (key == "elitism") config.elitism = as_bool();
        else if (key == "stop_on_optimum") config.stop_on_optimum = as_bool();
        else throw std::invalid_argument("unknown config key: " + key);
    }
    config.validate();
    return config;
}

std::string ga_config_to_text(const GaConfig& config) {
    std::ostringstream out;
    out << "population_size = " << config.population_size << "\n";
    out << "crossover_rate = " << config.crossover_rate << "\n";
    out << "mutation_rate = " << config.mutation_rate << "\n";
    out << "generations = " << config.generations << "\n";
    out << "runs = " << config.runs << "\n";
    out << "selection = " << (config.selection == Selection::Rank ? "rank" : "proportionate") << "\n";
    out << "elitism = " << (config.elitism ? "true" : "false") << "\n";
    out << "stop_on_optimum = " << (config.stop_on_optimum ? "true" : "false") << "\n";
    return out.str();
}

namespace {

struct GaContext {
    BinaryEvaluator eval;
    double fmax = 0.0;
    double fmin = 0.0;
    bool min_known = false;
    std::uint64_t all_ones = 0;
    int n = 0;
};

// Roulette draw over cumulative weights (last entry is the total).
std::size_t roulette(const std::vector<double>& cumulative, Rng& rng) {
    const double target = rng.uniform01() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

void fill_selection_weights(const GaContext& ctx, const GaConfig& config,
                            const std::vector<double>& fitness, std::vector<double>& weights,
                            std::vector<std::size_t>& rank_scratch) {
    const std::size_t count = fitness.size();
    const bool use_rank = config.selection == Selection::Rank || !ctx.min_known;
    weights.resize(count);
    if (use_rank) {
        // linear rank weights 1..count, worst to best
        rank_scratch.resize(count);
        std::iota(rank_scratch.begin(), rank_scratch.end(), 0);
        std::stable_sort(rank_scratch.begin(), rank_scratch.end(),
                         [&](std::size_t l, std::size_t r) { return fitness[l] < fitness[r]; });
        for (std::size_t pos = 0; pos < count; ++pos)
            weights[rank_scratch[pos]] = static_cast<double>(pos + 1);
    } else {
        const double range = ctx.fmax - ctx.fmin;
        for (std::size_t i = 0; i < count; ++i) weights[i] = (fitness[i] - ctx.fmin) / range;
    }
    // cumulative in place
    double total = 0.0;
    for (double& w : weights) {
        total += w;
        w = total;
    }
    if (total <= 0.0) {
        // degenerate (population at the minimum): fall back to uniform
        for (std::size_t i = 0; i < count; ++i) weights[i] = static_cast<double>(i + 1);
    }
}

}  // namespace

SearchTrace ga_run(const InteractionModel& m, const GaConfig& config, std::uint64_t seed) {
    config.validate();
    if (m.alphabet.arity != 2) throw UnsupportedError("genetic search requires a binary alphabet");
    if (m.n > 64) throw UnsupportedError("genetic search requires n <= 64");

    GaContext ctx{BinaryEvaluator(m), max_value(m), 0.0, has_known_min(m),
                  m.n == 64 ? ~0ull : (1ull << m.n) - 1, m.n};
    if (ctx.min_known) ctx.fmin = min_value(m);
    const double tol = kOptimumRelTol * std::abs(ctx.fmax);
    const double mutation_rate = config.mutation_rate < 0.0
                                     ? 1.0 / static_cast<double>(m.n)
                                     : config.mutation_rate;

    Rng rng(seed);
    const int pop_size = config.population_size;
    std::vector<std::uint64_t> population(pop_size);
    for (std::uint64_t& genome : population) genome = rng.next() & ctx.all_ones;
    std::vector<double> fitness(pop_size);
    for (int i = 0; i < pop_size; ++i) fitness[i] = ctx.eval(population[i]);

    SearchTrace trace;
    trace.seed = seed;
    trace.found_global = false;

    auto record = [&]() {
        const std::size_t best =
            std::max_element(fitness.begin(), fitness.end()) - fitness.begin();
        GenerationStat stat;
        stat.best_raw = fitness[best];
        stat.best_by_max = stat.best_raw / ctx.fmax;
        stat.best_minmax = ctx.min_known
                               ? (stat.best_raw - ctx.fmin) / (ctx.fmax - ctx.fmin)
                               : std::numeric_limits<double>::quiet_NaN();
        stat.distance_to_optimum =
            std::popcount((population[best] ^ ctx.all_ones) & ctx.all_ones);
        if (std::abs(stat.best_raw - ctx.fmax) <= tol) trace.found_global = true;
        stat.found_global = trace.found_global;
        trace.by_generation.push_back(stat);
        trace.best_genome = population[best];
        trace.best_fitness = fitness[best];
        trace.distance_to_optimum = stat.distance_to_optimum;
    };
    record();

    std::vector<double> weights;
    std::vector<std::size_t> rank_scratch;
    std::vector<std::uint64_t> children(pop_size);
    for (int gen = 1; gen <= config.generations; ++gen) {
        if (config.stop_on_optimum && trace.found_global) break;

        const std::size_t elite =
            std::max_element(fitness.begin(), fitness.end()) - fitness.begin();
        const std::uint64_t elite_genome = population[elite];
        const double elite_fitness = fitness[elite];

        fill_selection_weights(ctx, config, fitness, weights, rank_scratch);
        for (int i = 0; i < pop_size; i += 2) {
            std::uint64_t p1 = population[roulette(weights, rng)];
            std::uint64_t p2 = population[roulette(weights, rng)];
            if (rng.uniform01() < config.crossover_rate) {
                const std::uint64_t pick = rng.next() & ctx.all_ones;  // bit from p2 where set
                children[i] = (p1 & ~pick) | (p2 & pick);
                children[i + 1] = (p2 & ~pick) | (p1 & pick);
            } else {
                children[i] = p1;
                children[i + 1] = p2;
            }
        }
        for (std::uint64_t& genome : children) {
            std::uint64_t flips = 0;
            for (int b = 0; b < ctx.n; ++b)
                if (rng.uniform01() < mutation_rate) flips |= 1ull << b;
            genome ^= flips;
        }
        population.swap(children);
        for (int i = 0; i < pop_size; ++i) fitness[i] = ctx.eval(population[i]);

        if (config.elitism) {
            const std::size_t worst =
                std::min_element(fitness.begin(), fitness.end()) - fitness.begin();
            if (fitness[worst] < elite_fitness) {
                population[worst] = elite_genome;
                fitness[worst] = elite_fitness;
            }
        }
        record();
    }
    return trace;
}

GaModelSummary summarize_runs(std::span<const SearchTrace> traces) {
    GaModelSummary summary;
    summary.runs = static_cast<int>(traces.size());
    if (traces.empty()) return summary;
    std::size_t generations = 0;
    for (const SearchTrace& t : traces) generations = std::max(generations, t.by_generation.size());

    std::vector<double> raw, by_max, minmax;
    for (std::size_t g = 0; g < generations; ++g) {
        raw.clear();
        by_max.clear();
        minmax.clear();
        for (const SearchTrace& t : traces) {
            // runs stopped early repeat their final entry
            const GenerationStat& stat =
                t.by_generation[std::min(g, t.by_generation.size() - 1)];
            raw.push_back(stat.best_raw);
            by_max.push_back(stat.best_by_max);
            minmax.push_back(stat.best_minmax);
        }
        summary.mean_best_raw.push_back(mean(raw));
        summary.std_best_raw.push_back(sample_stddev(raw));
        summary.mean_best_by_max.push_back(mean(by_max));
        summary.std_best_by_max.push_back(sample_stddev(by_max));
        summary.mean_best_minmax.push_back(mean(minmax));
        summary.std_best_minmax.push_back(sample_stddev(minmax));
    }
    int successes = 0;
    std::vector<double> fail_distance;
    for (const SearchTrace& t : traces) {
        if (t.found_global) ++successes;
        else fail_distance.push_back(t.distance_to_optimum);
    }
    summary.success_proportion = static_cast<double>(successes) / traces.size();
    summary.mean_fail_distance = mean(fail_distance);
    summary.std_fail_distance = sample_stddev(fail_distance);
    return summary;
}

GaSweepResult ga_sweep(std::span<const InteractionModel> models, const GaConfig& config,
                       std::uint64_t master_seed, int workers) {
    config.validate();
    GaSweepResult result;
    result.traces.resize(models.size());
    for (auto& row : result.traces) row.resize(config.runs);

    const std::uint64_t jobs = models.size() * static_cast<std::uint64_t>(config.runs);
    parallel_for(0, jobs, workers, [&](std::uint64_t job) {
        const std::size_t model_idx = job / config.runs;
        const int run = static_cast<int>(job % config.runs);
        const std::uint64_t seed = Rng::substream(master_seed, job).next();
        result.traces[model_idx][run] = ga_run(models[model_idx], config, seed);
    });

    result.summaries.reserve(models.size());
    for (const auto& row : result.traces) result.summaries.push_back(summarize_runs(row));
    return result;
}

}  // namespace nmland
