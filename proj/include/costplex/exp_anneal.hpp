#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "costplex/cost_core.hpp"

// Multi-agent annealed gradient descent on a Gaussian-mixture landscape and
// the agent-count cost sweep.
namespace costplex::anneal {

using Vec2 = std::array<double, 2>;

struct GaussianWell {
  double amplitude;  // < 0
  Vec2 center;
  double width;  // > 0
};

class GaussianSurface2D {
 public:
  GaussianSurface2D(std::vector<GaussianWell> wells, double side = 10.0);

  // f(p) = sum_k A_k exp(-|p - c_k|^2 / (2 s_k^2))
  double value(Vec2 p) const;
  Vec2 gradient(Vec2 p) const;

  double side() const { return side_; }
  const std::vector<GaussianWell>& wells() const { return wells_; }
  Vec2 clamp(Vec2 p) const;

 private:
  std::vector<GaussianWell> wells_;
  double side_;
};

inline constexpr std::uint64_t kDefaultSurfaceSeed = 7;

// Eight wells: amplitudes U[-1, -0.2], centers U[1, 9]^2, widths U[0.4, 1.2].
GaussianSurface2D default_surface(std::uint64_t surface_seed = kDefaultSurfaceSeed);

struct GlobalMinimum {
  Vec2 position;
  double value;
};

// Dense grid search (resolution x resolution over [0, L]^2) followed by
// backtracking gradient descent from the best grid node.
GlobalMinimum locate_global_minimum(const GaussianSurface2D& surface,
                                    std::size_t resolution = 2001);

struct AnnealSchedule {
  double t0 = 1.0;
  double decay = 0.9;
  std::size_t period = 100;
  double t_min = 1e-3;

  void validate() const;
  // t0 * decay^floor(step / period)
  double temperature(std::size_t step) const;
};

struct AgentConfig {
  double step_size = 0.05;
  double noise_scale = 1.0;
  std::size_t max_steps = 5000;
  double k_boltzmann = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// 1 if delta_e <= 0, else exp(-delta_e / (k T)).
double accept_probability(double delta_e, double temperature, double k_boltzmann = 1.0);

struct TrajectorySample {
  std::size_t step;
  Vec2 position;
  double value;
  double temperature;
};

struct AgentResult {
  Vec2 final_position;
  std::size_t steps_used;
  std::vector<TrajectorySample> trajectory;  // filled only when requested
};

// Starts at a uniform point drawn from the agent seed unless `start` is given.
// Each step proposes clamp(x - eta grad f + xi), xi ~ N(0, (alpha T)^2 I), and
// accepts it with accept_probability(f(x') - f(x)). Stops after max_steps or
// once T < t_min and |grad f| < 1e-6.
AgentResult run_agent(const GaussianSurface2D& surface, const AnnealSchedule& schedule,
                      const AgentConfig& cfg, bool record_trajectory = false,
                      const Vec2* start = nullptr);

struct AnnealSweep {
  cost::CostCurve raw;         // repetition means
  cost::CostCurve normalized;
  std::vector<double> stddev_modeling;   // raw units
  std::vector<double> stddev_operation;  // raw units
  std::vector<double> stddev_total;      // normalized units
  cost::MinimumCost minimum;
  GlobalMinimum global_minimum;
};

enum class ModelingCostModel {
  steps,       // summed step counts, deterministic
  wall_clock,  // summed agent run time in seconds; not reproducible
};

// Agent a of repetition r always uses seed derive_seed(master_seed, r, a), so
// the agents of a small team are the first agents of every larger team.
AnnealSweep sweep_agents(const GaussianSurface2D& surface, const AnnealSchedule& schedule,
                         const AgentConfig& agent_cfg, std::span<const std::size_t> n_agents_values,
                         std::size_t repetitions, std::uint64_t master_seed,
                         const cost::CostCombiner& combiner = {},
                         ModelingCostModel cost_model = ModelingCostModel::steps);

std::uint64_t agent_seed(std::uint64_t master_seed, std::size_t repetition, std::size_t agent);

}  // namespace costplex::anneal
