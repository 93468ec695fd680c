#include "costplex/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "costplex/cost_core.hpp"
#include "costplex/errors.hpp"
#include "costplex/exp_anneal.hpp"
#include "costplex/exp_kde.hpp"
#include "costplex/exp_network.hpp"
#include "costplex/format.hpp"
#include "costplex/io.hpp"
#include "costplex/measures.hpp"

namespace costplex::cli {
namespace {

using nlohmann::json;

enum class Format { csv, json };

struct Common {
  std::string output;
  Format format = Format::csv;
  std::uint64_t seed = 0;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void add_common(CLI::App* cmd, Common& c, bool seeded) {
  cmd->add_option("--output,-o", c.output, "Output path (default: standard output)");
  cmd->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv},
                                                                        {"json", Format::json}}));
  if (seeded) cmd->add_option("--seed", c.seed, "Master seed");
}

void emit(const Common& c, Context& ctx, const std::function<void(std::ostream&)>& write) {
  if (c.output.empty()) {
    write(ctx.out);
    ctx.out.flush();
  } else {
    io::write_atomically(c.output, write);
  }
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

measures::BinaryGrid2D load_grid(const std::string& input, std::optional<int> koch_depth) {
  if (koch_depth) return measures::koch_raster(*koch_depth);
  if (input.empty()) throw ConfigError("either --input or --koch is required");
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot open '" + input + "'");
  return measures::BinaryGrid2D::read_pbm(in);
}

// ---------------------------------------------------------------------------

struct EntropyCmd {
  Common common;
  std::string input;
  bool lowercase = false;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, false);
    cmd->add_option("--input,-i", input, "UTF-8 text file, whitespace tokenized")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--lowercase", lowercase, "Fold ASCII letters before counting");
  }

  void run(Context& ctx) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + input + "'");
    const auto dist = measures::tokenize(in, lowercase);
    const double h = measures::shannon_entropy(dist);
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        write_json(out, {{"entropy_bits", h},
                         {"symbols", dist.symbol_count()},
                         {"tokens", dist.total()}});
      } else {
        out << format_real(h) << '\n';
      }
    });
  }
};

struct FractalCmd {
  Common common;
  std::string input;
  std::optional<int> koch;
  std::vector<std::size_t> sizes{1, 3, 9, 27, 81};

  void attach(CLI::App* cmd) {
    add_common(cmd, common, false);
    cmd->add_option("--input,-i", input, "Plain PBM (P1) raster")->check(CLI::ExistingFile);
    cmd->add_option("--koch", koch, "Use a generated Koch raster of this depth instead")
        ->check(CLI::Range(0, 9));
    cmd->add_option("--sizes", sizes, "Box sizes")->delimiter(',')->check(CLI::PositiveNumber);
  }

  void run(Context& ctx) {
    const auto grid = load_grid(input, koch);
    const auto r = measures::box_counting_dimension(grid, sizes);
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        json counts = json::array();
        for (const auto& c : r.counts) {
          counts.push_back({{"box_size", c.box_size}, {"occupied_boxes", c.occupied_boxes}});
        }
        write_json(out, {{"dimension", r.dimension}, {"counts", counts}});
      } else {
        out << "box_size,occupied_boxes,dimension\n";
        for (const auto& c : r.counts) {
          out << c.box_size << ',' << c.occupied_boxes << ',' << format_real(r.dimension) << '\n';
        }
      }
    });
  }
};

struct LacunarityCmd {
  Common common;
  std::string input;
  std::optional<int> koch;
  std::vector<std::size_t> sizes{1, 2, 4, 8, 16};

  void attach(CLI::App* cmd) {
    add_common(cmd, common, false);
    cmd->add_option("--input,-i", input, "Plain PBM (P1) raster")->check(CLI::ExistingFile);
    cmd->add_option("--koch", koch, "Use a generated Koch raster of this depth instead")
        ->check(CLI::Range(0, 9));
    cmd->add_option("--sizes", sizes, "Gliding-box sizes")->delimiter(',')->check(CLI::PositiveNumber);
  }

  void run(Context& ctx) {
    const auto grid = load_grid(input, koch);
    const auto lac = measures::lacunarity(grid, sizes);
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < sizes.size(); ++i) {
          rows.push_back({{"box_size", sizes[i]}, {"lacunarity", lac[i]}});
        }
        write_json(out, rows);
      } else {
        out << "box_size,lacunarity\n";
        for (std::size_t i = 0; i < sizes.size(); ++i) {
          out << sizes[i] << ',' << format_real(lac[i]) << '\n';
        }
      }
    });
  }
};

struct LyapunovCmd {
  Common common;
  std::string map = "logistic";
  double param = 4.0;
  double x0 = 0.3;
  double delta0 = 1e-9;
  std::size_t steps = 100000;
  bool raw = false;
  std::size_t fit_begin = 0;
  std::optional<std::size_t> fit_end;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, false);
    cmd->add_option("--map", map, "Map")->check(CLI::IsMember({"logistic"}));
    cmd->add_option("--param", param, "Map parameter (logistic r)");
    cmd->add_option("--x0", x0, "Initial state in (0, 1)");
    cmd->add_option("--delta0", delta0, "Initial separation in (0, 1e-6]");
    cmd->add_option("--steps", steps, "Map iterations (>= 10)");
    cmd->add_flag("--raw", raw, "Fit the raw separation instead of renormalizing each step");
    cmd->add_option("--fit-begin", fit_begin, "First time index in the fit");
    cmd->add_option("--fit-end", fit_end, "One past the last time index in the fit");
  }

  void run(Context& ctx) {
    const auto pair = measures::iterate_map_pair(measures::MapId::logistic, param, x0, delta0,
                                                 steps, !raw);
    measures::LyapunovWindow window;
    window.begin = fit_begin;
    if (fit_end) window.end = *fit_end;
    const double lambda = measures::largest_lyapunov(pair, window);
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        json j{{"lambda", lambda}, {"steps", steps}, {"renormalized", !raw}};
        if (!raw) j["mean_log_growth"] = pair.mean_log_growth();
        write_json(out, j);
      } else {
        out << format_real(lambda) << '\n';
      }
    });
  }
};

struct SandpileCmd {
  Common common;
  std::size_t width = 64;
  std::size_t height = 64;
  std::uint64_t grains = 100000;
  std::uint64_t warmup = 10000;
  int threshold = 4;
  bool histogram = false;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, true);
    cmd->add_option("--width", width, "Grid width (>= 2)");
    cmd->add_option("--height", height, "Grid height (>= 2)");
    cmd->add_option("--grains", grains, "Recorded grains");
    cmd->add_option("--warmup", warmup, "Unrecorded grains dropped first");
    cmd->add_option("--threshold", threshold, "Topple threshold (>= 4)");
    cmd->add_flag("--histogram", histogram, "Emit a log2-binned size histogram instead");
  }

  void run(Context& ctx) {
    measures::SandpileOptions opt;
    opt.warmup_grains = warmup;
    opt.threshold = threshold;
    const auto r = measures::sandpile_avalanches(width, height, grains, common.seed, opt);
    const auto& sizes = r.avalanche_sizes;
    emit(common, ctx, [&](std::ostream& out) {
      if (histogram) {
        const auto bins = measures::log_binned_histogram(sizes);
        if (common.format == Format::json) {
          json rows = json::array();
          for (const auto& b : bins) {
            rows.push_back({{"bin_lo", b.lo}, {"bin_hi", b.hi}, {"count", b.count}, {"density", b.density}});
          }
          write_json(out, rows);
        } else {
          out << "bin_lo,bin_hi,count,density\n";
          for (const auto& b : bins) {
            out << b.lo << ',' << b.hi << ',' << b.count << ',' << format_real(b.density) << '\n';
          }
        }
      } else if (common.format == Format::json) {
        write_json(out, {{"avalanche_sizes", sizes},
                         {"grains_lost", r.final_state.grains_lost()},
                         {"total_height", r.final_state.total_height()}});
      } else {
        out << "grain,avalanche_size\n";
        for (std::size_t i = 0; i < sizes.size(); ++i) out << i << ',' << sizes[i] << '\n';
      }
    });
  }
};

struct DescribeCmd {
  Common common;
  std::string input;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, false);
    cmd->add_option("--input,-i", input, "Any file, read as bytes")->required()->check(CLI::ExistingFile);
  }

  void run(Context& ctx) {
    const auto text = io::read_file(input);
    const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(text.data()),
                                              text.size());
    const auto d = measures::description_length_proxy(bytes);
    const auto steps = measures::logical_depth_proxy(bytes);
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        write_json(out, {{"original_length", d.original_length},
                         {"compressed_length", d.compressed_length},
                         {"ratio", d.ratio},
                         {"decompression_steps", steps}});
      } else {
        out << "original_length,compressed_length,ratio,decompression_steps\n"
            << d.original_length << ',' << d.compressed_length << ',' << format_real(d.ratio) << ','
            << steps << '\n';
      }
    });
  }
};

void add_combiner(CLI::App* cmd, cost::CostCombiner& c) {
  cmd->add_option("--w-model", c.w_model, "Modeling-cost weight");
  cmd->add_option("--w-oper", c.w_oper, "Operation-cost weight");
}

struct KdeCmd {
  Common common;
  kde::ReconstructionConfig cfg;
  std::vector<std::size_t> n_values = kde::default_sample_counts();
  kde::ModelingCostModel cost_model = kde::ModelingCostModel::count;
  cost::CostCombiner combiner;
  std::optional<std::size_t> dump_n;
  std::string dump_path;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, true);
    cmd->add_option("--n-values", n_values, "Sample counts, strictly increasing")->delimiter(',');
    cmd->add_option("--grid-points", cfg.grid_points, "Evaluation grid size (>= 64)");
    cmd->add_option("--bandwidth", cfg.bandwidth_factor, "Bandwidth factor kappa");
    cmd->add_option("--mode", cfg.mode, "Sampling mode")
        ->transform(CLI::CheckedTransformer(std::map<std::string, kde::SamplingMode>{
            {"deterministic", kde::SamplingMode::deterministic_weighted},
            {"random", kde::SamplingMode::random_draw}}));
    cmd->add_option("--cost-model", cost_model, "Modeling cost")
        ->transform(CLI::CheckedTransformer(std::map<std::string, kde::ModelingCostModel>{
            {"count", kde::ModelingCostModel::count},
            {"operations", kde::ModelingCostModel::operations}}));
    add_combiner(cmd, combiner);
    auto* dn = cmd->add_option("--dump-n", dump_n, "Also dump the reconstruction for this N");
    cmd->add_option("--dump", dump_path, "Path for the x,P,R dump")->needs(dn);
    dn->needs(cmd->get_option("--dump"));
  }

  void run(Context& ctx) {
    cfg.seed = common.seed;
    const auto target = kde::default_target();
    const auto sweep = kde::sweep_samples(target, cfg, n_values, cost_model, combiner);
    ctx.err << "kde-sweep: minimum total " << format_real(sweep.minimum.total) << " at N="
            << format_real(sweep.minimum.parameter)
            << (sweep.minimum.interior ? " (interior)" : " (boundary)") << '\n';
    std::optional<kde::Reconstruction> rec;
    if (dump_n) rec = kde::reconstruct(target, *dump_n, cfg);
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        write_json(out, {{"raw", cost::to_json(sweep.raw)},
                         {"normalized", cost::to_json(sweep.normalized)},
                         {"minimum",
                          {{"parameter", sweep.minimum.parameter},
                           {"total", sweep.minimum.total},
                           {"index", sweep.minimum.index},
                           {"interior", sweep.minimum.interior}}}});
      } else {
        cost::write_csv(out, sweep.normalized);
      }
    });
    if (rec) {
      io::write_atomically(dump_path, [&](std::ostream& out) {
        out << "x,P,R\n";
        for (std::size_t i = 0; i < rec->x.size(); ++i) {
          out << format_real(rec->x[i]) << ',' << format_real(rec->target[i]) << ','
              << format_real(rec->estimate[i]) << '\n';
        }
      });
    }
  }
};

struct AnnealCmd {
  Common common;
  anneal::AnnealSchedule schedule;
  anneal::AgentConfig agent;
  std::vector<std::size_t> agents{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t reps = 30;
  std::uint64_t surface_seed = anneal::kDefaultSurfaceSeed;
  cost::CostCombiner combiner;
  anneal::ModelingCostModel cost_model = anneal::ModelingCostModel::steps;
  std::string trajectory_path;
  std::size_t trajectory_agent = 0;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, true);
    cmd->add_option("--agents", agents, "Agent counts, strictly increasing")->delimiter(',');
    cmd->add_option("--reps", reps, "Repetitions per agent count");
    cmd->add_option("--surface-seed", surface_seed, "Seed of the default Gaussian landscape");
    cmd->add_option("--t0", schedule.t0, "Initial temperature");
    cmd->add_option("--decay", schedule.decay, "Temperature factor per period");
    cmd->add_option("--period", schedule.period, "Steps per temperature level");
    cmd->add_option("--t-min", schedule.t_min, "Temperature floor for the stopping rule");
    cmd->add_option("--step-size", agent.step_size, "Gradient step eta");
    cmd->add_option("--noise", agent.noise_scale, "Noise scale alpha");
    cmd->add_option("--max-steps", agent.max_steps, "Step limit per agent");
    cmd->add_option("--k", agent.k_boltzmann, "Boltzmann constant");
    cmd->add_option("--cost-model", cost_model, "Modeling cost (wall-clock output is not reproducible)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, anneal::ModelingCostModel>{
            {"steps", anneal::ModelingCostModel::steps},
            {"wall-clock", anneal::ModelingCostModel::wall_clock}}));
    add_combiner(cmd, combiner);
    cmd->add_option("--trajectory", trajectory_path, "Dump one agent's trajectory (step,x,y,f,T)");
    cmd->add_option("--trajectory-agent", trajectory_agent, "Agent index (repetition 0)");
  }

  void run(Context& ctx) {
    schedule.validate();
    agent.validate();
    const auto surface = anneal::default_surface(surface_seed);
    const auto sweep =
        anneal::sweep_agents(surface, schedule, agent, agents, reps, common.seed, combiner, cost_model);
    ctx.err << "anneal-sweep: minimum total " << format_real(sweep.minimum.total) << " at n="
            << format_real(sweep.minimum.parameter) << '\n';
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        write_json(out, {{"raw", cost::to_json(sweep.raw)},
                         {"normalized", cost::to_json(sweep.normalized)},
                         {"stddev_modeling", sweep.stddev_modeling},
                         {"stddev_operation", sweep.stddev_operation},
                         {"stddev_total", sweep.stddev_total},
                         {"minimum",
                          {{"parameter", sweep.minimum.parameter},
                           {"total", sweep.minimum.total},
                           {"index", sweep.minimum.index},
                           {"interior", sweep.minimum.interior}}},
                         {"global_minimum",
                          {{"x", sweep.global_minimum.position[0]},
                           {"y", sweep.global_minimum.position[1]},
                           {"f", sweep.global_minimum.value}}}});
      } else {
        const std::vector<cost::ExtraColumn> extra{{"stddev_total", sweep.stddev_total}};
        cost::write_csv(out, sweep.normalized, extra);
      }
    });
    if (!trajectory_path.empty()) {
      auto cfg = agent;
      cfg.seed = anneal::agent_seed(common.seed, 0, trajectory_agent);
      const auto r = anneal::run_agent(surface, schedule, cfg, true);
      io::write_atomically(trajectory_path, [&](std::ostream& out) {
        out << "step,x,y,f,T\n";
        for (const auto& s : r.trajectory) {
          out << s.step << ',' << format_real(s.position[0]) << ',' << format_real(s.position[1])
              << ',' << format_real(s.value) << ',' << format_real(s.temperature) << '\n';
        }
      });
    }
  }
};

struct NetworkCmd {
  Common common;
  std::string nodes;
  std::string edges;
  std::string fuel;
  network::BudgetPolicy policy;

  void attach(CLI::App* cmd) {
    add_common(cmd, common, false);
    cmd->add_option("--nodes", nodes, "Airport nodes CSV (id,lat,lon)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--edges", edges, "Edges CSV (src,dst[,weight_km])")->required()->check(CLI::ExistingFile);
    cmd->add_option("--fuel", fuel, "Fuel CSV (year,price_usd_per_gallon)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--budget", policy.budget, "Constant complexity budget B");
    add_combiner(cmd, policy.combiner);
  }

  void run(Context& ctx) {
    policy.combiner.validate();
    const auto fuel_series = io::load_fuel(fuel);
    const auto graph = io::load_graph(nodes, edges);
    const auto records = network::run_budget_experiment(graph, fuel_series, policy);
    for (const auto& r : records) {
      if (r.clamped) {
        ctx.err << "warning: " << r.year << ": implied modeling budget outside [0, 1], clamped to "
                << format_real(r.modeling_budget) << '\n';
      }
    }
    emit(common, ctx, [&](std::ostream& out) {
      if (common.format == Format::json) {
        write_json(out, io::year_records_to_json(records));
      } else {
        io::write_year_records_csv(out, records);
      }
    });
  }
};

// `--config FILE` is a top-level option; accept it after the subcommand too.
std::vector<std::string> hoist_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      const auto value = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      args.insert(args.begin(), {"--config", value});
      break;
    }
  }
  return args;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-based complexity toolkit", "costplex"};
  app.set_config("--config", "", "TOML/INI file; one [command] section of option values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  EntropyCmd entropy;
  FractalCmd fractal;
  LacunarityCmd lac;
  LyapunovCmd lyap;
  SandpileCmd sand;
  DescribeCmd describe;
  KdeCmd kde_cmd;
  AnnealCmd anneal_cmd;
  NetworkCmd net;

  std::map<CLI::App*, std::function<void(Context&)>> runners;
  auto reg = [&](const char* name, const char* help, auto& cmd) {
    auto* sub = app.add_subcommand(name, help);
    cmd.attach(sub);
    runners[sub] = [&cmd](Context& ctx) { cmd.run(ctx); };
  };
  reg("entropy", "Shannon entropy of a whitespace-tokenized text", entropy);
  reg("fractal", "Box-counting dimension of a binary raster", fractal);
  reg("lacunarity", "Gliding-box lacunarity of a binary raster", lac);
  reg("lyapunov", "Largest Lyapunov exponent of the logistic map", lyap);
  reg("sandpile", "Abelian sandpile avalanche sizes", sand);
  reg("describe", "Description-length and logical-depth proxies of a file", describe);
  reg("kde-sweep", "Sample-count cost sweep of the convolution reconstruction", kde_cmd);
  reg("anneal-sweep", "Agent-count cost sweep of multi-agent annealing", anneal_cmd);
  reg("network-budget", "Constant-complexity airport network experiment", net);

  auto args = hoist_config(raw_args);
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kValidationError;
  }

  Context ctx{out, err};
  try {
    for (auto* sub : app.get_subcommands()) runners.at(sub)(ctx);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace costplex::cli
