#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "costplex/cost_core.hpp"

// Reconstructing a function from samples by convolving a comb of weighted
// impulses with a Gaussian kernel, and the sample-count cost sweep built on it.
namespace costplex::kde {

struct MixtureComponent {
  double weight;  // > 0
  double mean;
  double stddev;  // > 0
};

struct TargetFunction1D {
  std::vector<MixtureComponent> components;
  double a = -5.0;
  double b = 5.0;

  void validate() const;
  double operator()(double x) const;
  // Mixture weights normalized to sum 1.
  std::vector<double> normalized_weights() const;
};

// 0.6 N(-1, 0.5) + 0.4 N(1.5, 0.8) on [-5, 5].
TargetFunction1D default_target();

// Unit-integral Gaussian kernel.
double gaussian_kernel(double x, double sigma);

// Kernel sums skip |x - x_i| > kKernelCutoff * sigma.
inline constexpr double kKernelCutoff = 8.0;

enum class SamplingMode { deterministic_weighted, random_draw };

struct ReconstructionConfig {
  std::size_t grid_points = 2048;
  double bandwidth_factor = 1.0;  // sigma = bandwidth_factor * (b - a) / N
  SamplingMode mode = SamplingMode::deterministic_weighted;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Reconstruction {
  std::vector<double> x;  // evaluation grid
  std::vector<double> target;
  std::vector<double> estimate;
  double sigma = 0.0;
  double quadratic_error = 0.0;  // sum over grid of (R - P)^2 * grid spacing
};

// deterministic_weighted: N equally spaced x_i on [a, b],
//   R(x) = sum_i P(x_i) dx G_sigma(x - x_i), dx = (b - a) / (N - 1).
// random_draw: x_i drawn from P as a density truncated to [a, b],
//   R(x) = (1 / N) sum_i G_sigma(x - x_i).
Reconstruction reconstruct(const TargetFunction1D& target, std::size_t n_samples,
                           const ReconstructionConfig& cfg);

enum class ModelingCostModel {
  count,       // N
  operations,  // N * G kernel evaluations
};

struct KdeSweep {
  cost::CostCurve raw;
  cost::CostCurve normalized;
  cost::MinimumCost minimum;
};

// One reconstruction per N (independent, evaluated in parallel); modeling cost
// from `cost_model`, operation cost = quadratic error. Needs >= 3 strictly
// increasing values.
KdeSweep sweep_samples(const TargetFunction1D& target, const ReconstructionConfig& cfg,
                       std::span<const std::size_t> n_values,
                       ModelingCostModel cost_model = ModelingCostModel::count,
                       const cost::CostCombiner& combiner = {});

// 10, 20, ..., 2000.
std::vector<std::size_t> default_sample_counts();

}  // namespace costplex::kde
