#include "costplex/exp_kde.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "costplex/errors.hpp"
#include "costplex/random.hpp"

namespace costplex::kde {

void TargetFunction1D::validate() const {
  if (components.empty()) throw ConfigError("target: no mixture components");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("target: domain needs finite a < b");
  }
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !(c.stddev > 0.0) || !std::isfinite(c.mean)) {
      throw ConfigError("target: components need weight > 0, stddev > 0, finite mean");
    }
  }
}

double TargetFunction1D::operator()(double x) const {
  double v = 0.0;
  for (const auto& c : components) v += c.weight * gaussian_kernel(x - c.mean, c.stddev);
  return v;
}

std::vector<double> TargetFunction1D::normalized_weights() const {
  double total = 0.0;
  for (const auto& c : components) total += c.weight;
  std::vector<double> w;
  for (const auto& c : components) w.push_back(c.weight / total);
  return w;
}

TargetFunction1D default_target() {
  return {{{0.6, -1.0, 0.5}, {0.4, 1.5, 0.8}}, -5.0, 5.0};
}

double gaussian_kernel(double x, double sigma) {
  const double z = x / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

void ReconstructionConfig::validate() const {
  if (grid_points < 64) throw ConfigError("reconstruction: grid_points must be >= 64");
  if (!(bandwidth_factor > 0.0) || !std::isfinite(bandwidth_factor)) {
    throw ConfigError("reconstruction: bandwidth factor must be > 0");
  }
}

namespace {

double draw_from_target(const TargetFunction1D& target, const std::vector<double>& weights,
                        rng::Engine& eng) {
  while (true) {
    double u = rng::uniform01(eng);
    std::size_t k = 0;
    while (k + 1 < weights.size() && u >= weights[k]) {
      u -= weights[k];
      ++k;
    }
    const auto& c = target.components[k];
    const double x = c.mean + c.stddev * rng::normal(eng);
    if (x >= target.a && x <= target.b) return x;
  }
}

}  // namespace

Reconstruction reconstruct(const TargetFunction1D& target, std::size_t n_samples,
                           const ReconstructionConfig& cfg) {
  target.validate();
  cfg.validate();
  if (n_samples < 2) throw ConfigError("reconstruct: need >= 2 samples");
  const double width = target.b - target.a;
  const double sigma = cfg.bandwidth_factor * width / static_cast<double>(n_samples);
  if (!(sigma > 0.0)) throw ConfigError("reconstruct: bandwidth collapsed to zero");

  std::vector<double> xs(n_samples);
  std::vector<double> ws(n_samples);
  if (cfg.mode == SamplingMode::deterministic_weighted) {
    const double dx = width / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
      xs[i] = i + 1 == n_samples ? target.b : target.a + dx * static_cast<double>(i);
      ws[i] = target(xs[i]) * dx;
    }
  } else {
    rng::Engine eng(cfg.seed);
    const auto weights = target.normalized_weights();
    for (auto& x : xs) x = draw_from_target(target, weights, eng);
    std::sort(xs.begin(), xs.end());
    std::fill(ws.begin(), ws.end(), 1.0 / static_cast<double>(n_samples));
  }

  Reconstruction rec;
  rec.sigma = sigma;
  const std::size_t g = cfg.grid_points;
  const double dg = width / static_cast<double>(g - 1);
  rec.x.resize(g);
  rec.target.resize(g);
  rec.estimate.resize(g);
  const double reach = kKernelCutoff * sigma;
  double err = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    const double x = j + 1 == g ? target.b : target.a + dg * static_cast<double>(j);
    // Samples are sorted, so the in-range ones form a contiguous block.
    const auto lo = std::lower_bound(xs.begin(), xs.end(), x - reach) - xs.begin();
    const auto hi = std::upper_bound(xs.begin(), xs.end(), x + reach) - xs.begin();
    double r = 0.0;
    for (auto i = lo; i < hi; ++i) r += ws[i] * gaussian_kernel(x - xs[i], sigma);
    const double p = target(x);
    rec.x[j] = x;
    rec.target[j] = p;
    rec.estimate[j] = r;
    err += (r - p) * (r - p) * dg;
  }
  rec.quadratic_error = err;
  return rec;
}

KdeSweep sweep_samples(const TargetFunction1D& target, const ReconstructionConfig& cfg,
                       std::span<const std::size_t> n_values, ModelingCostModel cost_model,
                       const cost::CostCombiner& combiner) {
  if (n_values.size() < 3) throw ConfigError("sweep_samples: need >= 3 sample counts");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw ConfigError("sweep_samples: sample counts must be strictly increasing");
    }
  }
  target.validate();
  cfg.validate();
  combiner.validate();

  // Each worker owns a strided subset of indices and writes only its slots,
  // so the result does not depend on scheduling.
  std::vector<double> errors(n_values.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n_values.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n_values.size(); i += workers) {
        errors[i] = reconstruct(target, n_values[i], cfg).quadratic_error;
      }
    }));
  }
  for (auto& j : jobs) j.get();

  std::vector<double> params, modeling;
  for (auto n : n_values) {
    params.push_back(static_cast<double>(n));
    modeling.push_back(cost_model == ModelingCostModel::count
                           ? static_cast<double>(n)
                           : static_cast<double>(n) * static_cast<double>(cfg.grid_points));
  }
  KdeSweep out;
  out.raw = cost::make_curve(params, modeling, errors, combiner);
  out.normalized = cost::normalize_curve(out.raw, combiner);
  out.minimum = cost::argmin_total(out.normalized);
  return out;
}

std::vector<std::size_t> default_sample_counts() {
  std::vector<std::size_t> n;
  for (std::size_t v = 10; v <= 2000; v += 10) n.push_back(v);
  return n;
}

}  // namespace costplex::kde
