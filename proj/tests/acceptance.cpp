// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "costplex/cli.hpp"
#include "costplex/exp_anneal.hpp"
#include "costplex/exp_kde.hpp"
#include "costplex/exp_network.hpp"
#include "costplex/io.hpp"
#include "costplex/lz77.hpp"
#include "costplex/measures.hpp"
#include "costplex/random.hpp"
#include "costplex/stats.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace costplex;

namespace {

const fs::path kFixture = FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) o.require(secs < limit_s, "runtime " + num(secs) + " s < " + num(limit_s) + " s");
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::span<const std::uint8_t> bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string repeat(const std::string& unit, std::size_t times) {
  std::string s;
  s.reserve(unit.size() * times);
  for (std::size_t i = 0; i < times; ++i) s += unit;
  return s;
}

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
  rng::Engine eng(seed);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(eng() >> 56);
  return v;
}

void entropy_anchors(Outcome& o) {
  const std::vector<std::uint64_t> even{50, 50}, skew{10, 90};
  const double h1 = measures::shannon_entropy(even);
  const double h2 = measures::shannon_entropy(skew);
  o.require(std::abs(h1 - 1.0) <= 1e-12, "H{50,50}=" + num(h1));
  o.require(std::abs(h2 - 0.469) <= 5e-4, "H{10,90}=" + num(h2));
}

void fractal(Outcome& o) {
  const std::vector<std::size_t> sizes{1, 3, 9, 27, 81};
  const double koch = measures::box_counting_dimension(measures::koch_raster(6), sizes).dimension;
  o.require(std::abs(koch - std::log(4.0) / std::log(3.0)) <= 0.05, "koch=" + num(koch));
  const double line = measures::box_counting_dimension(measures::line_raster(729), sizes).dimension;
  o.require(std::abs(line - 1.0) <= 0.05, "line=" + num(line));
  measures::BinaryGrid2D full(729, 729);
  for (std::size_t r = 0; r < 729; ++r)
    for (std::size_t c = 0; c < 729; ++c) full.set(r, c);
  const double square = measures::box_counting_dimension(full, sizes).dimension;
  o.require(std::abs(square - 2.0) <= 0.05, "square=" + num(square));
}

void lyapunov_run(Outcome& o) {
  using measures::MapId;
  const auto chaotic = measures::iterate_map_pair(MapId::logistic, 4.0, 0.3, 1e-9, 100000, true);
  const double l4 = measures::largest_lyapunov(chaotic);
  o.require(std::abs(l4 - 0.693) <= 0.02, "r=4: " + num(l4));
  const auto stable = measures::iterate_map_pair(MapId::logistic, 2.5, 0.3, 1e-9, 1000, true);
  const double l25 = measures::largest_lyapunov(stable);
  o.require(l25 < 0.0, "r=2.5: " + num(l25));
}

void sandpile_run(Outcome& o) {
  measures::SandpileOptions opt;
  opt.warmup_grains = 10000;
  const auto run = measures::sandpile_avalanches(64, 64, 100000, 0, opt);
  const auto& s = run.final_state;
  const auto added = static_cast<std::int64_t>(s.grains_added());
  const auto kept = s.total_height() + static_cast<std::int64_t>(s.grains_lost());
  o.require(added == 110000 && kept == added, "conservation added=" + std::to_string(added) +
                                                  " height+lost=" + std::to_string(kept));
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (auto v : run.avalanche_sizes)
    if (v > 0) lo = std::min(lo, v), hi = std::max(hi, v);
  const double decades = hi > 0 ? std::log10(static_cast<double>(hi) / static_cast<double>(lo)) : 0.0;
  o.require(decades >= 3.0, "span " + num(decades) + " decades");
  const auto bins = measures::log_binned_histogram(run.avalanche_sizes);
  int violations = 0;
  for (std::size_t i = 1; i < bins.size() && bins[i].lo < 1000; ++i)
    if (bins[i].density > bins[i - 1].density) ++violations;
  o.require(violations == 0, "density increases in first 3 decades: " + std::to_string(violations));
}

void compression(Outcome& o) {
  const auto million = repeat("million", 1000000);
  const double r1 = measures::description_length_proxy(bytes(million)).ratio;
  o.require(r1 < 0.01, "redundant ratio=" + num(r1));
  const auto noise = random_bytes(1 << 20, 1);
  const double r2 = measures::description_length_proxy(noise).ratio;
  o.require(r2 > 0.95, "random ratio=" + num(r2));

  std::vector<std::vector<std::uint8_t>> corpus;
  corpus.push_back({});
  corpus.push_back({'x'});
  corpus.push_back(std::vector<std::uint8_t>(100000, 0));
  corpus.push_back(std::vector<std::uint8_t>(lz77::kMaxMatch + 4, 'a'));
  for (std::size_t n : {2u, 3u, 4u, 255u, 256u, 4096u, 32767u, 32768u, 32769u, 70000u})
    corpus.push_back(random_bytes(n, n));
  {
    const auto text = repeat("the cost of a model and the cost of running it ", 3000);
    corpus.emplace_back(text.begin(), text.end());
  }
  {
    // Repeats just inside and just outside the window.
    auto block = random_bytes(lz77::kWindow - 1, 5);
    auto v = block;
    v.insert(v.end(), block.begin(), block.begin() + 600);
    corpus.push_back(v);
    block = random_bytes(lz77::kWindow + 10, 6);
    v = block;
    v.insert(v.end(), block.begin(), block.begin() + 600);
    corpus.push_back(v);
  }
  {
    std::mt19937_64 eng(11);
    for (int k = 0; k < 200; ++k) {
      std::vector<std::uint8_t> v(eng() % 5000);
      const auto alphabet = 1 + eng() % 4;
      for (auto& b : v) b = static_cast<std::uint8_t>('a' + eng() % alphabet);
      corpus.push_back(v);
    }
  }
  std::size_t mismatches = 0;
  for (const auto& v : corpus)
    if (lz77::decompress(lz77::compress(v)) != v) ++mismatches;
  o.require(mismatches == 0, "round trip " + std::to_string(corpus.size() - mismatches) + "/" +
                                 std::to_string(corpus.size()));
}

void kde_sweep(Outcome& o) {
  const auto target = kde::default_target();
  const kde::ReconstructionConfig cfg;
  const auto ns = kde::default_sample_counts();
  const auto sweep = kde::sweep_samples(target, cfg, ns);
  std::vector<double> n, oper;
  for (const auto& p : sweep.raw.points) n.push_back(p.parameter), oper.push_back(p.operation_cost);
  const double rho = stats::spearman(n, oper);
  o.require(rho < -0.9, "spearman(N, error)=" + num(rho));
  o.require(sweep.minimum.interior, "argmin N=" + num(sweep.minimum.parameter));
  double worst = 0.0;
  for (std::size_t count : {50u, 200u, 500u, 1000u}) {
    kde::ReconstructionConfig fine = cfg;
    fine.grid_points = cfg.grid_points * 2;
    const double e1 = kde::reconstruct(target, count, cfg).quadratic_error;
    const double e2 = kde::reconstruct(target, count, fine).quadratic_error;
    worst = std::max(worst, std::abs(e1 - e2) / e2);
  }
  o.require(worst < 0.01, "grid doubling change " + num(worst * 100) + "%");
}

void annealing(Outcome& o) {
  const auto surface = anneal::default_surface();
  std::vector<std::size_t> ns;
  for (std::size_t k = 1; k <= 10; ++k) ns.push_back(k);
  const auto sweep = anneal::sweep_agents(surface, {}, {}, ns, 30, 0);
  std::vector<double> n, oper;
  bool increasing = true;
  for (std::size_t i = 0; i < sweep.raw.points.size(); ++i) {
    const auto& p = sweep.raw.points[i];
    n.push_back(p.parameter);
    oper.push_back(p.operation_cost);
    if (i > 0 && !(p.modeling_cost > sweep.raw.points[i - 1].modeling_cost)) increasing = false;
  }
  const double rho = stats::spearman(n, oper);
  o.require(rho < 0.0, "spearman(n, distance)=" + num(rho));
  o.require(increasing, "modeling cost strictly increasing");
  const double at = sweep.minimum.parameter;
  o.require(sweep.minimum.interior && at >= 2 && at <= 6, "argmin n=" + num(at));

  std::mt19937_64 eng(1234);
  std::uniform_real_distribution<double> u(0.0, surface.side());
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const anneal::Vec2 p{u(eng), u(eng)};
    const auto g = surface.gradient(p);
    const double fx = (surface.value({p[0] + h, p[1]}) - surface.value({p[0] - h, p[1]})) / (2 * h);
    const double fy = (surface.value({p[0], p[1] + h}) - surface.value({p[0], p[1] - h})) / (2 * h);
    const double scale = std::max(std::hypot(g[0], g[1]), 1e-3);
    worst = std::max(worst, std::hypot(g[0] - fx, g[1] - fy) / scale);
  }
  o.require(worst <= 1e-5, "max gradient relative error " + num(worst));
}

network::WeightedGraph make_graph(std::size_t n, const std::vector<oracle::TestEdge>& edges) {
  network::WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node("v" + std::to_string(i));
  for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
  return g;
}

void network_experiment(Outcome& o) {
  // Small random connected graphs against exhaustive enumeration.
  std::mt19937_64 eng(4242);
  int graphs = 0, mst_mismatch = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + eng() % 7;
    std::vector<oracle::TestEdge> edges;
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    for (std::size_t v = 1; v < n; ++v) {
      const std::size_t u = eng() % v;
      used[u][v] = used[v][u] = true;
      edges.push_back({u, v, static_cast<double>(1 + eng() % 9)});
    }
    const std::size_t extra = eng() % 8;
    for (std::size_t k = 0; k < extra * 4; ++k) {
      const std::size_t a = eng() % n, b = eng() % n;
      if (a == b || used[a][b]) continue;
      used[a][b] = used[b][a] = true;
      edges.push_back({a, b, static_cast<double>(1 + eng() % 9)});
    }
    const auto g = make_graph(n, edges);
    double w = 0.0;
    for (auto e : network::minimum_spanning_tree(g)) w += g.edges()[e].weight;
    if (std::abs(w - oracle::brute_force_mst_weight(n, edges)) > 1e-9) ++mst_mismatch;
    ++graphs;
  }
  o.require(mst_mismatch == 0, "MST vs exhaustive " + std::to_string(graphs - mst_mismatch) + "/" +
                                   std::to_string(graphs));

  const auto g = io::load_graph(kFixture / "airports.csv", kFixture / "routes.csv");
  const auto mst = network::minimum_spanning_tree(g);
  double mst_len = 0.0;
  for (auto e : mst) mst_len += g.edges()[e].weight;
  int violations = 0;
  double prev = INFINITY;
  for (int k = 0; k <= 100; ++k) {
    const double budget = mst_len + (g.total_weight() - mst_len) * k / 100.0;
    const double asp = network::average_shortest_path(g.subgraph(network::budget_select_edges(g, mst, budget)));
    if (asp > prev * (1 + 1e-12)) ++violations;
    prev = asp;
  }
  o.require(violations == 0, "ASP violations " + std::to_string(violations));

  const auto fuel = io::load_fuel(kFixture / "fuel.csv");
  const auto rec = network::run_budget_experiment(g, fuel);
  std::size_t imax = 0, imin = 0;
  for (std::size_t i = 0; i < fuel.size(); ++i) {
    if (fuel[i].price > fuel[imax].price) imax = i;
    if (fuel[i].price < fuel[imin].price) imin = i;
  }
  o.require(rec[imax].edge_count == mst.size(), "max-fuel year edges " + std::to_string(rec[imax].edge_count) +
                                                    " (MST " + std::to_string(mst.size()) + ")");
  o.require(rec[imin].edge_count == g.edge_count(), "min-fuel year edges " +
                                                        std::to_string(rec[imin].edge_count) + " (full " +
                                                        std::to_string(g.edge_count()) + ")");
  std::vector<double> price, count;
  for (const auto& r : rec) price.push_back(r.fuel_price), count.push_back(static_cast<double>(r.edge_count));
  const double rho = stats::spearman(price, count);
  o.require(rho < 0.0, "spearman(fuel, edges)=" + num(rho));
}

struct Capture {
  int status;
  std::string out, err, files;
};

void determinism(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("costplex_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "text.txt") << "the cost of modeling and the cost of operating it\n";
    std::ofstream pbm(dir / "koch.pbm");
    measures::koch_raster(4).write_pbm(pbm);
  }
  const auto f = [&](const char* name) { return (dir / name).string(); };
  const auto fx = [&](const char* name) { return (kFixture / name).string(); };
  const std::vector<std::vector<std::string>> commands = {
      {"entropy", "--input", f("text.txt")},
      {"entropy", "--input", f("text.txt"), "--format", "json"},
      {"fractal", "--input", f("koch.pbm"), "--sizes", "1,3,9,27"},
      {"fractal", "--koch", "5", "--format", "json"},
      {"lacunarity", "--koch", "4"},
      {"lyapunov", "--param", "3.9", "--steps", "5000"},
      {"lyapunov", "--param", "3.9", "--steps", "500", "--raw", "--fit-end", "30", "--format", "json"},
      {"sandpile", "--width", "32", "--height", "32", "--grains", "20000", "--seed", "17"},
      {"sandpile", "--width", "32", "--height", "32", "--grains", "20000", "--seed", "17", "--histogram"},
      {"describe", "--input", f("text.txt")},
      {"kde-sweep", "--mode", "random", "--seed", "5", "--n-values", "10,100,400,1000", "--dump-n", "100",
       "--dump", f("dump.csv")},
      {"kde-sweep", "--format", "json"},
      {"anneal-sweep", "--agents", "1,2,3,4", "--reps", "5", "--seed", "8", "--trajectory", f("traj.csv")},
      {"network-budget", "--nodes", fx("airports.csv"), "--edges", fx("routes.csv"), "--fuel", fx("fuel.csv")},
      {"network-budget", "--nodes", fx("airports.csv"), "--edges", fx("routes.csv"), "--fuel", fx("fuel.csv"),
       "--format", "json", "--output", f("net.json")},
  };
  const auto capture = [&](const std::vector<std::string>& args) {
    for (const char* side : {"dump.csv", "traj.csv", "net.json"}) fs::remove(dir / side);
    std::ostringstream out, err;
    Capture c{cli::dispatch(args, out, err), out.str(), err.str(), {}};
    for (const char* side : {"dump.csv", "traj.csv", "net.json"})
      if (fs::exists(dir / side)) c.files += io::read_file(dir / side);
    return c;
  };
  int differing = 0, failed = 0;
  for (const auto& args : commands) {
    const auto a = capture(args);
    const auto b = capture(args);
    if (a.status != cli::kOk) {
      ++failed;
      o.require(false, args[0] + " exited " + std::to_string(a.status) + ": " + a.err);
    }
    if (a.out != b.out || a.files != b.files || (a.out.empty() && a.files.empty())) ++differing;
  }
  fs::remove_all(dir);
  o.require(failed == 0 && differing == 0, std::to_string(commands.size() - differing) + "/" +
                                               std::to_string(commands.size()) + " invocations byte-identical");
}

}  // namespace

int main() {
  criterion(1, "entropy anchors", 1.0, entropy_anchors);
  criterion(2, "fractal dimension", 5.0, fractal);
  criterion(3, "lyapunov exponent", 2.0, lyapunov_run);
  criterion(4, "sandpile avalanches", 30.0, sandpile_run);
  criterion(5, "compression proxies", 0.0, compression);
  criterion(6, "kde sweep", 60.0, kde_sweep);
  criterion(7, "annealing sweep", 300.0, annealing);
  criterion(8, "network experiment", 30.0, network_experiment);
  criterion(9, "determinism", 0.0, determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
