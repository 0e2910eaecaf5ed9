#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nmland/enumerate.hpp"
#include "nmland/model.hpp"
#include "nmland/nk.hpp"
#include "nmland/rng.hpp"

namespace nmland {

// A local peak is strictly fitter than every neighbor; ties disqualify.
std::vector<std::uint8_t> local_peak_flags(const EvaluatedLandscape& el);
int count_local_peaks(const EvaluatedLandscape& el);

// Weighted size of the global maximum's basin of attraction, in [0, 1].
// Processing points in decreasing fitness order: the maximum has weight 1,
// any other point averages the weights of its strictly fitter neighbors
// (0 when it has none, i.e. a sub-optimal peak). Requires a unique maximum.
double basin_fraction(const EvaluatedLandscape& el);

// Alternative reading of the same statistic: a point's weight is the
// fraction of its strictly fitter neighbors that can reach the maximum via
// improving moves. Never below basin_fraction; kept for comparison.
double basin_fraction_membership(const EvaluatedLandscape& el);

// Fitness sequence of a uniform random neighbor walk, length steps + 1.
std::vector<double> random_walk(const EvaluatedLandscape& el, int steps, Rng& rng);
// Direct-evaluation variants for landscapes too large to tabulate.
std::vector<double> random_walk(const InteractionModel& m, int steps, Rng& rng);
std::vector<double> random_walk(const NKLandscape& nk, int steps, Rng& rng);

// Pearson correlation of consecutive fitness values. Needs length >= 3 and
// nonzero variance in both shifted halves (throws std::domain_error).
double lag1_autocorrelation(std::span<const double> fitness);

struct WalkParams {
    int walks = 10;
    int steps = 10000;
};

double mean_walk_autocorrelation(const EvaluatedLandscape& el, const WalkParams& params, Rng& rng);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> counts;
};

// Equal-width bins spanning the observed fitness range.
Histogram fitness_histogram(const EvaluatedLandscape& el, int bins = 30);

struct ProfileEntry {
    std::uint64_t index;
    int distance;  // coordinate steps to the global maximum
    double fitness;
    bool is_peak;
};

std::vector<ProfileEntry> distance_profile(const EvaluatedLandscape& el);

struct LandscapeStats {
    int peak_count = 0;
    double lag1_autocorr = 0.0;
    double basin_frac = 0.0;  // NaN when the maximum is not unique
    Histogram histogram;
    std::vector<ProfileEntry> profile;
};

struct StatsOptions {
    WalkParams walk;
    int histogram_bins = 30;
    bool with_profile = true;
};

LandscapeStats compute_stats(const EvaluatedLandscape& el, Rng& rng, const StatsOptions& opts = {});

}  // namespace nmland
