#include "nmland/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nmland {

std::vector<std::uint8_t> local_peak_flags(const EvaluatedLandscape& el) {
    const std::uint64_t count = el.size();
    std::vector<std::uint8_t> peak(count, 0);
    for (std::uint64_t g = 0; g < count; ++g) {
        const double f = el.fitness[g];
        bool is_peak = true;
        for_each_neighbor(el, g, [&](std::uint64_t nb) {
            if (el.fitness[nb] >= f) is_peak = false;
        });
        peak[g] = is_peak ? 1 : 0;
    }
    return peak;
}

int count_local_peaks(const EvaluatedLandscape& el) {
    const std::uint64_t count = el.size();
    int peaks = 0;
    for (std::uint64_t g = 0; g < count; ++g) {
        const double f = el.fitness[g];
        bool is_peak = true;
        for_each_neighbor(el, g, [&](std::uint64_t nb) {
            if (el.fitness[nb] >= f) is_peak = false;
        });
        peaks += is_peak ? 1 : 0;
    }
    return peaks;
}

namespace {

std::vector<std::uint64_t> indices_by_descending_fitness(const EvaluatedLandscape& el) {
    std::vector<std::uint64_t> order(el.size());
    std::iota(order.begin(), order.end(), 0ull);
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t l, std::uint64_t r) {
        if (el.fitness[l] != el.fitness[r]) return el.fitness[l] > el.fitness[r];
        return l < r;
    });
    return order;
}

std::uint64_t unique_maximum_or_throw(const EvaluatedLandscape& el) {
    const double top = el.fitness[el.optimum_index];
    std::uint64_t ties = 0;
    for (double f : el.fitness) ties += (f == top);
    if (ties != 1) throw UnsupportedError("basin statistic requires a unique global maximum");
    return el.optimum_index;
}

}  // namespace

double basin_fraction(const EvaluatedLandscape& el) {
    const std::uint64_t top = unique_maximum_or_throw(el);
    const std::vector<std::uint64_t> order = indices_by_descending_fitness(el);
    std::vector<double> weight(el.size(), 0.0);
    weight[top] = 1.0;
    for (std::uint64_t g : order) {
        if (g == top) continue;
        const double f = el.fitness[g];
        double sum = 0.0;
        int uphill = 0;
        for_each_neighbor(el, g, [&](std::uint64_t nb) {
            if (el.fitness[nb] > f) {
                sum += weight[nb];
                ++uphill;
            }
        });
        weight[g] = uphill > 0 ? sum / uphill : 0.0;
    }
    return std::accumulate(weight.begin(), weight.end(), 0.0) / static_cast<double>(el.size());
}

double basin_fraction_membership(const EvaluatedLandscape& el) {
    const std::uint64_t top = unique_maximum_or_throw(el);
    const std::vector<std::uint64_t> order = indices_by_descending_fitness(el);
    std::vector<std::uint8_t> in_basin(el.size(), 0);
    in_basin[top] = 1;
    std::vector<double> weight(el.size(), 0.0);
    weight[top] = 1.0;
    for (std::uint64_t g : order) {
        if (g == top) continue;
        const double f = el.fitness[g];
        int uphill = 0;
        int uphill_in_basin = 0;
        for_each_neighbor(el, g, [&](std::uint64_t nb) {
            if (el.fitness[nb] > f) {
                ++uphill;
                uphill_in_basin += in_basin[nb];
            }
        });
        in_basin[g] = (uphill_in_basin > 0) ? 1 : 0;
        weight[g] = uphill > 0 ? static_cast<double>(uphill_in_basin) / uphill : 0.0;
    }
    return std::accumulate(weight.begin(), weight.end(), 0.0) / static_cast<double>(el.size());
}

std::vector<double> random_walk(const EvaluatedLandscape& el, int steps, Rng& rng) {
    if (steps < 1) throw std::invalid_argument("walk needs at least one step");
    std::vector<double> trace;
    trace.reserve(steps + 1);
    std::uint64_t at = static_cast<std::uint64_t>(rng.uniform01() * static_cast<double>(el.size()));
    if (at >= el.size()) at = el.size() - 1;
    trace.push_back(el.fitness[at]);
    if (el.arity == 2) {  // all n single-bit flips are the neighborhood
        for (int s = 0; s < steps; ++s) {
            at ^= 1ull << rng.uniform_int(0, el.n - 1);
            trace.push_back(el.fitness[at]);
        }
        return trace;
    }
    std::vector<std::uint64_t> options;
    options.reserve(2 * el.n);
    for (int s = 0; s < steps; ++s) {
        options.clear();
        for_each_neighbor(el, at, [&](std::uint64_t nb) { options.push_back(nb); });
        at = options[rng.uniform_int(0, static_cast<int>(options.size()) - 1)];
        trace.push_back(el.fitness[at]);
    }
    return trace;
}

namespace {

// Shared digit-vector walk over any point-evaluating function.
template <class EvalFn>
std::vector<double> walk_digits(int n, int arity, EvalFn&& eval, int steps, Rng& rng) {
    if (steps < 1) throw std::invalid_argument("walk needs at least one step");
    std::vector<int> digits(n);
    for (int f = 0; f < n; ++f) digits[f] = rng.uniform_int(0, arity - 1);
    std::vector<double> trace;
    trace.reserve(steps + 1);
    trace.push_back(eval(digits));
    std::vector<std::pair<int, int>> options;  // (feature, new digit)
    options.reserve(2 * n);
    for (int s = 0; s < steps; ++s) {
        options.clear();
        for (int f = 0; f < n; ++f) {
            if (digits[f] > 0) options.emplace_back(f, digits[f] - 1);
            if (digits[f] < arity - 1) options.emplace_back(f, digits[f] + 1);
        }
        const auto [f, d] = options[rng.uniform_int(0, static_cast<int>(options.size()) - 1)];
        digits[f] = d;
        trace.push_back(eval(digits));
    }
    return trace;
}

}  // namespace

std::vector<double> random_walk(const InteractionModel& m, int steps, Rng& rng) {
    if (m.alphabet.real_valued()) throw UnsupportedError("random walk requires a finite arity");
    const std::vector<double> levels = m.alphabet.levels();
    Point x(m.n);
    auto eval = [&](const std::vector<int>& digits) {
        for (int f = 0; f < m.n; ++f) x[f] = levels[digits[f]];
        return evaluate(m, x);
    };
    return walk_digits(m.n, m.alphabet.arity, eval, steps, rng);
}

std::vector<double> random_walk(const NKLandscape& nk, int steps, Rng& rng) {
    auto eval = [&](const std::vector<int>& digits) {
        return evaluate_nk(nk, std::span<const int>(digits));
    };
    return walk_digits(nk.n, 2, eval, steps, rng);
}

double lag1_autocorrelation(std::span<const double> fitness) {
    if (fitness.size() < 3) throw std::invalid_argument("need at least three fitness values");
    const std::size_t pairs = fitness.size() - 1;
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t t = 0; t < pairs; ++t) {
        mean_x += fitness[t];
        mean_y += fitness[t + 1];
    }
    mean_x /= pairs;
    mean_y /= pairs;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t t = 0; t < pairs; ++t) {
        const double dx = fitness[t] - mean_x;
        const double dy = fitness[t + 1] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::domain_error("autocorrelation undefined: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double mean_walk_autocorrelation(const EvaluatedLandscape& el, const WalkParams& params, Rng& rng) {
    double sum = 0.0;
    for (int w = 0; w < params.walks; ++w) {
        const std::vector<double> trace = random_walk(el, params.steps, rng);
        sum += lag1_autocorrelation(trace);
    }
    return sum / params.walks;
}

Histogram fitness_histogram(const EvaluatedLandscape& el, int bins) {
    if (bins < 1) throw std::invalid_argument("need at least one bin");
    Histogram h;
    h.counts.assign(bins, 0);
    const auto [lo_it, hi_it] = std::minmax_element(el.fitness.begin(), el.fitness.end());
    h.lo = *lo_it;
    h.hi = *hi_it;
    const double width = (h.hi - h.lo) / bins;
    for (double f : el.fitness) {
        int bin = width > 0.0 ? static_cast<int>((f - h.lo) / width) : 0;
        bin = std::clamp(bin, 0, bins - 1);
        ++h.counts[bin];
    }
    return h;
}

std::vector<ProfileEntry> distance_profile(const EvaluatedLandscape& el) {
    const std::vector<std::uint8_t> peaks = local_peak_flags(el);
    std::vector<ProfileEntry> profile;
    profile.reserve(el.size());
    for (std::uint64_t g = 0; g < el.size(); ++g)
        profile.push_back(ProfileEntry{g, step_distance(el, g, el.optimum_index), el.fitness[g],
                                       peaks[g] != 0});
    return profile;
}

LandscapeStats compute_stats(const EvaluatedLandscape& el, Rng& rng, const StatsOptions& opts) {
    LandscapeStats stats;
    stats.peak_count = count_local_peaks(el);
    stats.lag1_autocorr = mean_walk_autocorrelation(el, opts.walk, rng);
    try {
        stats.basin_frac = basin_fraction(el);
    } catch (const UnsupportedError&) {
        stats.basin_frac = std::numeric_limits<double>::quiet_NaN();
    }
    stats.histogram = fitness_histogram(el, opts.histogram_bins);
    if (opts.with_profile) stats.profile = distance_profile(el);
    return stats;
}

}  // namespace nmland
