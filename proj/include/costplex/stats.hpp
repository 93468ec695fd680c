#pragma once

#include <span>
#include <vector>

namespace costplex::stats {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with
// distinct x; throws ConfigError otherwise.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Average ranks (1-based), ties share the mean rank.
std::vector<double> ranks(std::span<const double> v);

// Spearman rank correlation = Pearson correlation of the average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);

// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> v);

}  // namespace costplex::stats
