#include "costplex/exp_anneal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "costplex/errors.hpp"
#include "costplex/random.hpp"
#include "costplex/stats.hpp"

namespace costplex::anneal {

GaussianSurface2D::GaussianSurface2D(std::vector<GaussianWell> wells, double side)
    : wells_(std::move(wells)), side_(side) {
  if (wells_.empty()) throw ConfigError("GaussianSurface2D: need >= 1 well");
  if (!(side_ > 0.0) || !std::isfinite(side_)) throw ConfigError("GaussianSurface2D: side must be > 0");
  for (const auto& w : wells_) {
    if (!(w.amplitude < 0.0) || !(w.width > 0.0) || !std::isfinite(w.center[0]) ||
        !std::isfinite(w.center[1])) {
      throw ConfigError("GaussianSurface2D: wells need amplitude < 0, width > 0");
    }
  }
}

double GaussianSurface2D::value(Vec2 p) const {
  double f = 0.0;
  for (const auto& w : wells_) {
    const double dx = p[0] - w.center[0];
    const double dy = p[1] - w.center[1];
    f += w.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * w.width * w.width));
  }
  return f;
}

Vec2 GaussianSurface2D::gradient(Vec2 p) const {
  Vec2 g{0.0, 0.0};
  for (const auto& w : wells_) {
    const double dx = p[0] - w.center[0];
    const double dy = p[1] - w.center[1];
    const double s2 = w.width * w.width;
    const double e = w.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * s2));
    g[0] -= e * dx / s2;
    g[1] -= e * dy / s2;
  }
  return g;
}

Vec2 GaussianSurface2D::clamp(Vec2 p) const {
  return {std::clamp(p[0], 0.0, side_), std::clamp(p[1], 0.0, side_)};
}

GaussianSurface2D default_surface(std::uint64_t surface_seed) {
  rng::Engine eng(rng::derive_seed(surface_seed, 0x5u));
  std::vector<GaussianWell> wells;
  for (int k = 0; k < 8; ++k) {
    const double amplitude = rng::uniform(eng, -1.0, -0.2);
    const double cx = rng::uniform(eng, 1.0, 9.0);
    const double cy = rng::uniform(eng, 1.0, 9.0);
    const double width = rng::uniform(eng, 0.4, 1.2);
    wells.push_back({amplitude, {cx, cy}, width});
  }
  return GaussianSurface2D(std::move(wells), 10.0);
}

namespace {

double norm(Vec2 v) { return std::hypot(v[0], v[1]); }

// Backtracking (Armijo) gradient descent inside the box.
Vec2 polish(const GaussianSurface2D& s, Vec2 p) {
  double f = s.value(p);
  for (int it = 0; it < 100000; ++it) {
    const Vec2 g = s.gradient(p);
    if (norm(g) < 1e-13) break;
    double step = 1.0;
    bool moved = false;
    while (step > 1e-16) {
      const Vec2 q = s.clamp({p[0] - step * g[0], p[1] - step * g[1]});
      const double fq = s.value(q);
      if (fq < f - 1e-4 * step * (g[0] * g[0] + g[1] * g[1]) || (fq < f && step < 1e-8)) {
        p = q;
        f = fq;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return p;
}

}  // namespace

GlobalMinimum locate_global_minimum(const GaussianSurface2D& surface, std::size_t resolution) {
  if (resolution < 2) throw ConfigError("locate_global_minimum: resolution must be >= 2");
  const double h = surface.side() / static_cast<double>(resolution - 1);
  Vec2 best{0.0, 0.0};
  double best_f = surface.value(best);
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      const Vec2 p{h * static_cast<double>(i), h * static_cast<double>(j)};
      const double f = surface.value(p);
      if (f < best_f) {
        best_f = f;
        best = p;
      }
    }
  }
  const Vec2 refined = polish(surface, best);
  return {refined, surface.value(refined)};
}

void AnnealSchedule::validate() const {
  if (!(t0 > 0.0)) throw ConfigError("schedule: T0 must be > 0");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("schedule: decay must lie in (0, 1)");
  if (period == 0) throw ConfigError("schedule: period must be >= 1");
  if (!(t_min > 0.0)) throw ConfigError("schedule: T_min must be > 0");
}

double AnnealSchedule::temperature(std::size_t step) const {
  return t0 * std::pow(decay, static_cast<double>(step / period));
}

void AgentConfig::validate() const {
  if (!(step_size > 0.0)) throw ConfigError("agent: step size must be > 0");
  if (!(noise_scale >= 0.0)) throw ConfigError("agent: noise scale must be >= 0");
  if (max_steps == 0) throw ConfigError("agent: max_steps must be >= 1");
  if (!(k_boltzmann > 0.0)) throw ConfigError("agent: Boltzmann constant must be > 0");
}

double accept_probability(double delta_e, double temperature, double k_boltzmann) {
  if (!(temperature > 0.0)) throw DomainError("accept_probability: temperature must be > 0");
  if (!(k_boltzmann > 0.0)) throw DomainError("accept_probability: k must be > 0");
  if (delta_e <= 0.0) return 1.0;
  return std::exp(-delta_e / (k_boltzmann * temperature));
}

AgentResult run_agent(const GaussianSurface2D& surface, const AnnealSchedule& schedule,
                      const AgentConfig& cfg, bool record_trajectory, const Vec2* start) {
  schedule.validate();
  cfg.validate();
  rng::Engine eng(cfg.seed);
  Vec2 x = start ? surface.clamp(*start)
                 : Vec2{rng::uniform(eng, 0.0, surface.side()), rng::uniform(eng, 0.0, surface.side())};
  double fx = surface.value(x);

  AgentResult result{x, 0, {}};
  if (record_trajectory) result.trajectory.push_back({0, x, fx, schedule.temperature(0)});
  for (std::size_t step = 0; step < cfg.max_steps; ++step) {
    const double t = schedule.temperature(step);
    const Vec2 g = surface.gradient(x);
    if (t < schedule.t_min && norm(g) < 1e-6) break;
    const double sd = cfg.noise_scale * t;
    const double n0 = rng::normal(eng);
    const double n1 = rng::normal(eng);
    const Vec2 proposal = surface.clamp(
        {x[0] - cfg.step_size * g[0] + sd * n0, x[1] - cfg.step_size * g[1] + sd * n1});
    const double fp = surface.value(proposal);
    if (!std::isfinite(fp)) throw InternalError("run_agent: non-finite surface value");
    const double p = accept_probability(fp - fx, t, cfg.k_boltzmann);
    if (p >= 1.0 || rng::uniform01(eng) < p) {
      x = proposal;
      fx = fp;
    }
    result.steps_used = step + 1;
    if (record_trajectory) result.trajectory.push_back({step + 1, x, fx, t});
  }
  result.final_position = x;
  return result;
}

std::uint64_t agent_seed(std::uint64_t master_seed, std::size_t repetition, std::size_t agent) {
  return rng::derive_seed(master_seed, 0xA6E47u, repetition, agent);
}

AnnealSweep sweep_agents(const GaussianSurface2D& surface, const AnnealSchedule& schedule,
                         const AgentConfig& agent_cfg, std::span<const std::size_t> n_agents_values,
                         std::size_t repetitions, std::uint64_t master_seed,
                         const cost::CostCombiner& combiner, ModelingCostModel cost_model) {
  if (n_agents_values.size() < 3) throw ConfigError("sweep_agents: need >= 3 agent counts");
  if (n_agents_values.front() == 0) throw ConfigError("sweep_agents: agent counts must be >= 1");
  for (std::size_t i = 1; i < n_agents_values.size(); ++i) {
    if (n_agents_values[i] <= n_agents_values[i - 1]) {
      throw ConfigError("sweep_agents: agent counts must be strictly increasing");
    }
  }
  if (repetitions == 0) throw ConfigError("sweep_agents: repetitions must be >= 1");
  schedule.validate();
  agent_cfg.validate();
  combiner.validate();

  AnnealSweep out;
  out.global_minimum = locate_global_minimum(surface);
  const Vec2 target = out.global_minimum.position;

  // Every (repetition, agent) run is independent; results land in fixed slots.
  const std::size_t max_agents = n_agents_values.back();
  const std::size_t jobs_total = repetitions * max_agents;
  std::vector<double> distance(jobs_total);
  std::vector<double> steps(jobs_total);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs_total);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < jobs_total; k += workers) {
        AgentConfig cfg = agent_cfg;
        cfg.seed = agent_seed(master_seed, k / max_agents, k % max_agents);
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = run_agent(surface, schedule, cfg);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
        distance[k] = std::hypot(r.final_position[0] - target[0], r.final_position[1] - target[1]);
        steps[k] = cost_model == ModelingCostModel::steps ? static_cast<double>(r.steps_used) : elapsed.count();
      }
    }));
  }
  for (auto& j : jobs) j.get();

  const std::size_t npts = n_agents_values.size();
  std::vector<std::vector<double>> rep_model(npts, std::vector<double>(repetitions));
  std::vector<std::vector<double>> rep_oper(npts, std::vector<double>(repetitions));
  std::vector<double> params, mean_model, mean_oper;
  for (std::size_t i = 0; i < npts; ++i) {
    const std::size_t n = n_agents_values[i];
    for (std::size_t r = 0; r < repetitions; ++r) {
      double sum_steps = 0.0;
      double best = distance[r * max_agents];
      for (std::size_t a = 0; a < n; ++a) {
        sum_steps += steps[r * max_agents + a];
        best = std::min(best, distance[r * max_agents + a]);
      }
      rep_model[i][r] = sum_steps;
      rep_oper[i][r] = best;
    }
    params.push_back(static_cast<double>(n));
    mean_model.push_back(stats::mean(rep_model[i]));
    mean_oper.push_back(stats::mean(rep_oper[i]));
    out.stddev_modeling.push_back(stats::sample_stddev(rep_model[i]));
    out.stddev_operation.push_back(stats::sample_stddev(rep_oper[i]));
  }
  out.raw = cost::make_curve(params, mean_model, mean_oper, combiner);
  out.normalized = cost::normalize_curve(out.raw, combiner);
  out.minimum = cost::argmin_total(out.normalized);

  // Repetition totals use the same affine maps as the mean curve.
  const auto [m_lo, m_hi] = std::minmax_element(mean_model.begin(), mean_model.end());
  const auto [o_lo, o_hi] = std::minmax_element(mean_oper.begin(), mean_oper.end());
  auto scale = [](double v, double lo, double hi) { return hi == lo ? 0.0 : (v - lo) / (hi - lo); };
  for (std::size_t i = 0; i < npts; ++i) {
    std::vector<double> totals;
    for (std::size_t r = 0; r < repetitions; ++r) {
      totals.push_back(combiner.w_model * scale(rep_model[i][r], *m_lo, *m_hi) +
                       combiner.w_oper * scale(rep_oper[i][r], *o_lo, *o_hi));
    }
    out.stddev_total.push_back(stats::sample_stddev(totals));
  }
  return out;
}

}  // namespace costplex::anneal
