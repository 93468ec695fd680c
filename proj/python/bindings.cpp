#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "costplex/cli.hpp"
#include "costplex/errors.hpp"
#include "costplex/exp_anneal.hpp"
#include "costplex/exp_kde.hpp"
#include "costplex/exp_network.hpp"
#include "costplex/io.hpp"
#include "costplex/measures.hpp"

namespace py = pybind11;
using namespace costplex;

namespace {

using Rows = std::vector<std::vector<bool>>;

measures::BinaryGrid2D to_grid(const Rows& rows) {
  if (rows.empty() || rows[0].empty()) throw ConfigError("grid: need at least one row and column");
  measures::BinaryGrid2D g(rows[0].size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw ConfigError("grid: ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) g.set(r, c, rows[r][c]);
  }
  return g;
}

Rows from_grid(const measures::BinaryGrid2D& g) {
  Rows rows(g.height(), std::vector<bool>(g.width()));
  for (std::size_t r = 0; r < g.height(); ++r)
    for (std::size_t c = 0; c < g.width(); ++c) rows[r][c] = g.at(r, c);
  return rows;
}

py::list curve_rows(const cost::CostCurve& curve) {
  py::list out;
  for (const auto& p : curve.points) {
    py::dict d;
    d["parameter"] = p.parameter;
    d["modeling_cost"] = p.modeling_cost;
    d["operation_cost"] = p.operation_cost;
    d["total_cost"] = p.total;
    out.append(d);
  }
  return out;
}

py::dict minimum_dict(const cost::MinimumCost& m) {
  py::dict d;
  d["parameter"] = m.parameter;
  d["total_cost"] = m.total;
  d["index"] = m.index;
  d["interior"] = m.interior;
  return d;
}

std::span<const std::uint8_t> as_span(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cost-based complexity measures and experiments";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  (void)config_error;

  m.def("shannon_entropy",
        [](const std::vector<std::uint64_t>& counts) { return measures::shannon_entropy(counts); },
        py::arg("counts"), "Entropy in bits of a count vector.");
  m.def("text_entropy",
        [](const std::string& text, bool lowercase) {
          std::istringstream in(text);
          return measures::shannon_entropy(measures::tokenize(in, lowercase));
        },
        py::arg("text"), py::arg("lowercase") = false, "Entropy in bits of whitespace tokens.");

  m.def("koch_raster", [](int depth) { return from_grid(measures::koch_raster(depth)); }, py::arg("depth"));
  m.def("box_counting_dimension",
        [](const Rows& rows, const std::vector<std::size_t>& sizes) {
          const auto res = measures::box_counting_dimension(to_grid(rows), sizes);
          std::vector<std::pair<std::size_t, std::size_t>> counts;
          for (const auto& c : res.counts) counts.emplace_back(c.box_size, c.occupied_boxes);
          return py::make_tuple(res.dimension, counts);
        },
        py::arg("grid"), py::arg("sizes") = std::vector<std::size_t>{1, 3, 9, 27, 81},
        "Returns (dimension, [(box_size, occupied_boxes), ...]).");
  m.def("lacunarity",
        [](const Rows& rows, const std::vector<std::size_t>& sizes) {
          return measures::lacunarity(to_grid(rows), sizes);
        },
        py::arg("grid"), py::arg("sizes") = std::vector<std::size_t>{1, 2, 4, 8, 16});

  m.def("lyapunov_logistic",
        [](double r, double x0, double delta0, std::size_t steps, bool renormalize) {
          const auto pair = measures::iterate_map_pair(measures::MapId::logistic, r, x0, delta0, steps, renormalize);
          return measures::largest_lyapunov(pair);
        },
        py::arg("r") = 4.0, py::arg("x0") = 0.3, py::arg("delta0") = 1e-9, py::arg("steps") = 100000,
        py::arg("renormalize") = true);

  m.def("sandpile_avalanches",
        [](std::size_t width, std::size_t height, std::uint64_t grains, std::uint64_t seed, std::uint64_t warmup) {
          measures::SandpileOptions opt;
          opt.warmup_grains = warmup;
          return measures::sandpile_avalanches(width, height, grains, seed, opt).avalanche_sizes;
        },
        py::arg("width") = 64, py::arg("height") = 64, py::arg("grains") = 100000, py::arg("seed") = 0,
        py::arg("warmup") = 0);

  m.def("description_length",
        [](const py::bytes& data) {
          const auto r = measures::description_length_proxy(as_span(data));
          return py::make_tuple(r.original_length, r.compressed_length, r.ratio);
        },
        py::arg("data"), "Returns (original_length, compressed_length, ratio).");
  m.def("logical_depth",
        [](const py::bytes& data) { return measures::logical_depth_proxy(as_span(std::string(data))); },
        py::arg("data"));

  m.def("kde_sweep",
        [](std::vector<std::size_t> n_values, std::size_t grid_points, bool random_draw, std::uint64_t seed) {
          kde::ReconstructionConfig cfg;
          cfg.grid_points = grid_points;
          cfg.mode = random_draw ? kde::SamplingMode::random_draw : kde::SamplingMode::deterministic_weighted;
          cfg.seed = seed;
          if (n_values.empty()) n_values = kde::default_sample_counts();
          py::gil_scoped_release release;
          auto sweep = kde::sweep_samples(kde::default_target(), cfg, n_values);
          py::gil_scoped_acquire acquire;
          py::dict d;
          d["raw"] = curve_rows(sweep.raw);
          d["normalized"] = curve_rows(sweep.normalized);
          d["minimum"] = minimum_dict(sweep.minimum);
          return d;
        },
        py::arg("n_values") = std::vector<std::size_t>{}, py::arg("grid_points") = 2048,
        py::arg("random_draw") = false, py::arg("seed") = 0);

  m.def("anneal_sweep",
        [](std::vector<std::size_t> agents, std::size_t reps, std::uint64_t seed, std::uint64_t surface_seed) {
          if (agents.empty())
            for (std::size_t k = 1; k <= 10; ++k) agents.push_back(k);
          py::gil_scoped_release release;
          auto sweep = anneal::sweep_agents(anneal::default_surface(surface_seed), {}, {}, agents, reps, seed);
          py::gil_scoped_acquire acquire;
          py::dict d;
          d["raw"] = curve_rows(sweep.raw);
          d["normalized"] = curve_rows(sweep.normalized);
          d["stddev_total"] = sweep.stddev_total;
          d["minimum"] = minimum_dict(sweep.minimum);
          d["global_minimum"] = py::make_tuple(sweep.global_minimum.position[0], sweep.global_minimum.position[1],
                                               sweep.global_minimum.value);
          return d;
        },
        py::arg("agents") = std::vector<std::size_t>{}, py::arg("reps") = 30, py::arg("seed") = 0,
        py::arg("surface_seed") = anneal::kDefaultSurfaceSeed);

  m.def("network_budget",
        [](const std::string& nodes, const std::string& edges, const std::string& fuel, double budget) {
          const auto g = io::load_graph(nodes, edges);
          network::BudgetPolicy policy;
          policy.budget = budget;
          py::list out;
          for (const auto& r : network::run_budget_experiment(g, io::load_fuel(fuel), policy)) {
            py::dict d;
            d["year"] = r.year;
            d["fuel_price"] = r.fuel_price;
            d["operation_cost"] = r.operation_cost;
            d["modeling_cost"] = r.modeling_cost;
            d["edge_count"] = r.edge_count;
            d["total_edge_length_km"] = r.total_edge_length_km;
            d["avg_shortest_path_km"] = r.average_shortest_path_km;
            d["clamped"] = r.clamped;
            out.append(d);
          }
          return out;
        },
        py::arg("nodes"), py::arg("edges"), py::arg("fuel"), py::arg("budget") = 1.0);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int status = cli::dispatch(args, out, err);
          return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"), "Runs one command; returns (exit_status, stdout, stderr).");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
