#include <algorithm>
#include <cmath>

#include "costplex/errors.hpp"
#include "costplex/exp_kde.hpp"
#include "costplex/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace costplex;
using namespace costplex::kde;

TEST_CASE("kernel mass over +-8 sigma") {
  for (double sigma : {1e-3, 0.05, 1.0, 7.5}) {
    const double mass = oracle::simpson([&](double x) { return gaussian_kernel(x, sigma); },
                                        -kKernelCutoff * sigma, kKernelCutoff * sigma, 4000);
    CHECK(mass >= 0.999);
    CHECK(mass <= 1.001);
  }
}

TEST_CASE("default target") {
  const auto t = default_target();
  CHECK(t.components.size() == 2);
  CHECK(t.a == -5.0);
  CHECK(t.b == 5.0);
  const double mass = oracle::simpson(t, t.a, t.b, 20000);
  // The right component sits 4.4 sd from the upper edge; ~2.4e-6 falls outside.
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(mass < 1.0);
}

TEST_CASE("error decreases with sample count") {
  const auto t = default_target();
  ReconstructionConfig cfg;
  const double e10 = reconstruct(t, 10, cfg).quadratic_error;
  const double e100 = reconstruct(t, 100, cfg).quadratic_error;
  const double e2000 = reconstruct(t, 2000, cfg).quadratic_error;
  const double e10000 = reconstruct(t, 10000, cfg).quadratic_error;
  CHECK(e2000 < e100);
  CHECK(e100 < e10);
  CHECK(e10000 < e10);
}

TEST_CASE("dense sampling of a single Gaussian") {
  TargetFunction1D t{{{1.0, 0.3, 0.7}}, -5.0, 5.0};
  ReconstructionConfig cfg;
  cfg.grid_points = 2048;
  const auto rec = reconstruct(t, 2048, cfg);
  const double norm_sq = oracle::simpson([&](double x) { return t(x) * t(x); }, t.a, t.b, 20000);
  CHECK(rec.quadratic_error < 1e-3 * norm_sq);
}

TEST_CASE("two samples of a flat target") {
  TargetFunction1D t{{{1.0, 0.0, 100.0}}, -5.0, 5.0};
  const auto rec = reconstruct(t, 2, ReconstructionConfig{});
  const auto [lo, hi] = std::minmax_element(rec.estimate.begin(), rec.estimate.end());
  CHECK((*hi - *lo) / *hi < 0.15);
  CHECK(rec.quadratic_error < 1e-6);
}

TEST_CASE("deterministic mode ignores the seed") {
  const auto t = default_target();
  ReconstructionConfig a, b;
  a.seed = 1;
  b.seed = 999;
  const auto ra = reconstruct(t, 137, a);
  const auto rb = reconstruct(t, 137, b);
  CHECK(ra.estimate == rb.estimate);
  CHECK(ra.quadratic_error == rb.quadratic_error);
}

TEST_CASE("grid refinement changes the error by < 1% at N=500") {
  const auto t = default_target();
  ReconstructionConfig coarse, fine;
  fine.grid_points = 2 * coarse.grid_points;
  const double ec = reconstruct(t, 500, coarse).quadratic_error;
  const double ef = reconstruct(t, 500, fine).quadratic_error;
  CHECK(std::abs(ef - ec) / ec < 0.01);
}

TEST_CASE("random-draw mode") {
  const auto t = default_target();
  ReconstructionConfig cfg;
  cfg.mode = SamplingMode::random_draw;
  cfg.seed = 5;
  const auto a = reconstruct(t, 300, cfg);
  const auto b = reconstruct(t, 300, cfg);
  CHECK(a.estimate == b.estimate);
  cfg.seed = 6;
  CHECK(reconstruct(t, 300, cfg).estimate != a.estimate);
  cfg.bandwidth_factor = 20.0;  // wider kernels for the noisy estimator
  CHECK(reconstruct(t, 20000, cfg).quadratic_error < reconstruct(t, 20, cfg).quadratic_error);
}

TEST_CASE("configuration errors") {
  const auto t = default_target();
  ReconstructionConfig cfg;
  CHECK_THROWS_AS(reconstruct(t, 1, cfg), ConfigError);
  cfg.grid_points = 32;
  CHECK_THROWS_AS(reconstruct(t, 10, cfg), ConfigError);
  cfg = {};
  cfg.bandwidth_factor = 0.0;
  CHECK_THROWS_AS(reconstruct(t, 10, cfg), ConfigError);
  TargetFunction1D bad{{{1.0, 0.0, -1.0}}, -1.0, 1.0};
  CHECK_THROWS_AS(reconstruct(bad, 10, ReconstructionConfig{}), ConfigError);
}

TEST_CASE("sweep") {
  const auto t = default_target();
  const std::vector<std::size_t> two{10, 20};
  const std::vector<std::size_t> unsorted{10, 30, 20};
  CHECK_THROWS_AS(sweep_samples(t, {}, two), ConfigError);
  CHECK_THROWS_AS(sweep_samples(t, {}, unsorted), ConfigError);

  std::vector<std::size_t> n;
  for (std::size_t v = 10; v <= 400; v += 30) n.push_back(v);
  const auto s = sweep_samples(t, {}, n);
  CHECK(s.normalized.normalized);
  CHECK(s.raw.points.front().modeling_cost == 10.0);
  for (const auto& p : s.normalized.points) {
    CHECK(p.operation_cost >= 0.0);
    CHECK(p.operation_cost <= 1.0);
  }
  std::vector<double> nn, oc;
  for (const auto& p : s.raw.points) {
    nn.push_back(p.parameter);
    oc.push_back(p.operation_cost);
  }
  CHECK(stats::spearman(nn, oc) < -0.9);
  CHECK(s.minimum.interior);

  const auto ops = sweep_samples(t, {}, n, ModelingCostModel::operations);
  CHECK(ops.raw.points[1].modeling_cost == 40.0 * 2048.0);
  // Both modeling channels normalize to the same shape.
  for (std::size_t i = 0; i < n.size(); ++i) {
    CHECK(ops.normalized.points[i].modeling_cost ==
          doctest::Approx(s.normalized.points[i].modeling_cost).epsilon(1e-12));
  }
}
