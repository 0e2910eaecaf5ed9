#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nmland/model.hpp"
#include "nmland/rng.hpp"

namespace nmland {

struct HillClimbResult {
    Point point;
    double fitness = 0.0;
    int steps = 0;
};

// Steepest ascent to a local peak: move to the strictly fittest neighbor
// until none improves; among equally good neighbors the lowest point index
// wins, so the climb is deterministic.
HillClimbResult hill_climb(const InteractionModel& m, const Point& start);

enum class Selection { Proportionate, Rank };

struct GaConfig {
    int population_size = 256;
    double crossover_rate = 0.7;   // per pair, uniform crossover
    double mutation_rate = -1.0;   // per bit; < 0 selects 1/n
    int generations = 30;
    int runs = 32;
    // Rank selection is the default: its scale-free pressure is what lets
    // the search solve every order-1 landscape within 30 generations, which
    // is the calibration target for these defaults. Proportionate selection
    // weights by range-normalized fitness instead (and falls back to rank
    // when the minimum is unknown).
    Selection selection = Selection::Rank;
    bool elitism = true;
    bool stop_on_optimum = false;

    void validate() const;  // throws std::invalid_argument
};

// key = value lines; '#' starts a comment. Unknown keys are rejected.
GaConfig ga_config_from_text(const std::string& text);
std::string ga_config_to_text(const GaConfig& config);

struct GenerationStat {
    double best_raw = 0.0;
    double best_by_max = 0.0;
    double best_minmax = 0.0;     // NaN when the minimum is unknown
    int distance_to_optimum = 0;  // Hamming distance of the generation's best
    bool found_global = false;    // true once the maximum has been attained
};

struct SearchTrace {
    std::vector<GenerationStat> by_generation;  // entry 0 is the initial population
    std::uint64_t best_genome = 0;              // bit i-1 set = feature i at level b
    double best_fitness = 0.0;
    int distance_to_optimum = 0;
    bool found_global = false;
    std::uint64_t seed = 0;
};

// Generational genetic algorithm on a binary-alphabet model (n <= 64):
// roulette selection over rank or range-normalized weights, uniform
// crossover on random disjoint pairs, per-bit mutation, optional
// single-elite carryover. found_global compares the best raw fitness to the
// model maximum at 1e-9 relative tolerance.
SearchTrace ga_run(const InteractionModel& m, const GaConfig& config, std::uint64_t seed);

struct GaModelSummary {
    // per-generation aggregates over the runs of one model
    std::vector<double> mean_best_raw, std_best_raw;
    std::vector<double> mean_best_by_max, std_best_by_max;
    std::vector<double> mean_best_minmax, std_best_minmax;
    double success_proportion = 0.0;
    double mean_fail_distance = 0.0;  // NaN when every run succeeded
    double std_fail_distance = 0.0;   // NaN with fewer than two failures
    int runs = 0;
};

struct GaSweepResult {
    std::vector<std::vector<SearchTrace>> traces;  // [model][run]
    std::vector<GaModelSummary> summaries;         // [model]
};

// config.runs seeded runs per model, substreamed from master_seed; runs
// execute in parallel.
GaSweepResult ga_sweep(std::span<const InteractionModel> models, const GaConfig& config,
                       std::uint64_t master_seed, int workers = 0);

GaModelSummary summarize_runs(std::span<const SearchTrace> traces);

}  // namespace nmland
