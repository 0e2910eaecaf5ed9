#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmland/enumerate.hpp"
#include "nmland/search.hpp"

namespace nmland {

inline constexpr const char* kVersion = "0.1.0";

// One experiment run: the id selects the procedure, the remaining fields
// override its defaults (-1 / empty = keep the default). Every run writes
// deterministic CSV data files plus an <id>_meta.json sidecar; re-running
// the same spec reproduces the data files byte for byte.
struct ExperimentSpec {
    std::string id;
    std::string outdir = ".";
    int n = -1;
    std::vector<double> sigmas;
    int replicates = -1;
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::vector<double> proportions;  // p-sweep experiments
    std::vector<int> orders;          // max-order sweeps (and the NK k list)
    int histogram_bins = 30;
    int workers = 0;  // 0 = NMLAND_WORKERS or hardware concurrency
};

// Canonical list of experiment ids, one per reproduced figure.
const std::vector<std::string>& experiment_ids();

// Compact single-line JSON of the (resolved) spec; embedded in every CSV.
std::string spec_to_json(const ExperimentSpec& spec);

// Runs the experiment and returns the list of files written (relative to
// spec.outdir). Throws std::invalid_argument for unknown ids or bad
// parameters and BudgetError when an exhaustive step would exceed
// spec.budget.
std::vector<std::string> run_experiment(const ExperimentSpec& spec);

}  // namespace nmland
