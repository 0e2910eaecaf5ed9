#pragma once

#include <span>

namespace nmland {

double mean(std::span<const double> xs);
// Sample standard deviation (n-1 denominator); NaN for fewer than 2 values.
double sample_stddev(std::span<const double> xs);

double pearson(std::span<const double> xs, std::span<const double> ys);
// Rank correlation with average ranks for ties.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Moment skewness g1 = m3 / m2^(3/2); NaN for degenerate samples.
double skewness(std::span<const double> xs);

}  // namespace nmland
