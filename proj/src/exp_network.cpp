#include "costplex/exp_network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <string>

#include "costplex/errors.hpp"

namespace costplex::network {

double haversine_km(GeoPoint a, GeoPoint b) {
  for (const auto& p : {a, b}) {
    if (!(p.lat_deg >= -90.0 && p.lat_deg <= 90.0) || !(p.lon_deg >= -180.0 && p.lon_deg <= 180.0)) {
      throw DomainError("haversine: coordinate out of range");
    }
  }
  constexpr double rad = std::numbers::pi / 180.0;
  const double dlat = (b.lat_deg - a.lat_deg) * rad;
  const double dlon = (b.lon_deg - a.lon_deg) * rad;
  const double s = std::sin(dlat / 2.0);
  const double t = std::sin(dlon / 2.0);
  const double h = s * s + std::cos(a.lat_deg * rad) * std::cos(b.lat_deg * rad) * t * t;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::size_t WeightedGraph::add_node(const std::string& id, std::optional<GeoPoint> location) {
  if (id.empty()) throw ConfigError("graph: empty node id");
  if (index_.count(id)) throw ConfigError("graph: duplicate node id '" + id + "'");
  if (location) haversine_km(*location, *location);  // range check
  index_[id] = ids_.size();
  ids_.push_back(id);
  locations_.push_back(location);
  return ids_.size() - 1;
}

std::size_t WeightedGraph::add_edge(std::size_t u, std::size_t v, double weight) {
  if (u >= ids_.size() || v >= ids_.size()) throw ConfigError("graph: edge endpoint out of range");
  if (u == v) throw ConfigError("graph: self-loop on '" + ids_[u] + "'");
  if (!std::isfinite(weight) || !(weight > 0.0)) {
    throw ConfigError("graph: edge weight must be finite and > 0");
  }
  const auto key = std::minmax(u, v);
  if (edge_index_.count(key)) {
    throw ConfigError("graph: duplicate edge " + ids_[u] + "-" + ids_[v]);
  }
  edge_index_[key] = edges_.size();
  edges_.push_back({u, v, weight});
  return edges_.size() - 1;
}

std::optional<std::size_t> WeightedGraph::find(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::string describe_components(const std::vector<std::size_t>& sizes) {
  std::string s = std::to_string(sizes.size()) + " components of sizes";
  for (auto n : sizes) s += " " + std::to_string(n);
  return s;
}

}  // namespace

std::vector<std::size_t> WeightedGraph::component_sizes() const {
  DisjointSets ds(ids_.size());
  for (const auto& e : edges_) ds.unite(e.u, e.v);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ds.find(i) == i) sizes.push_back(ds.size_of(i));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

WeightedGraph WeightedGraph::subgraph(const std::vector<std::size_t>& edge_indices) const {
  WeightedGraph g;
  for (std::size_t i = 0; i < ids_.size(); ++i) g.add_node(ids_[i], locations_[i]);
  for (auto k : edge_indices) {
    const auto& e = edges_.at(k);
    g.add_edge(e.u, e.v, e.weight);
  }
  return g;
}

std::vector<std::size_t> edge_order(const WeightedGraph& g) {
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& edges = g.edges();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = edges[a];
    const auto& eb = edges[b];
    const auto ka = std::make_tuple(ea.weight, std::min(ea.u, ea.v), std::max(ea.u, ea.v));
    const auto kb = std::make_tuple(eb.weight, std::min(eb.u, eb.v), std::max(eb.u, eb.v));
    return ka < kb;
  });
  return order;
}

std::vector<std::size_t> minimum_spanning_tree(const WeightedGraph& g) {
  if (g.node_count() == 0) throw DomainError("minimum_spanning_tree: empty graph");
  const auto sizes = g.component_sizes();
  if (sizes.size() > 1) {
    throw DomainError("minimum_spanning_tree: graph is disconnected (" + describe_components(sizes) + ")");
  }
  DisjointSets ds(g.node_count());
  std::vector<std::size_t> tree;
  tree.reserve(g.node_count() - 1);
  for (auto k : edge_order(g)) {
    const auto& e = g.edges()[k];
    if (ds.unite(e.u, e.v)) {
      tree.push_back(k);
      if (tree.size() + 1 == g.node_count()) break;
    }
  }
  return tree;
}

double average_shortest_path(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DomainError("average_shortest_path: need >= 2 nodes");
  const auto sizes = g.component_sizes();
  if (sizes.size() > 1) {
    throw DomainError("average_shortest_path: graph is disconnected (" + describe_components(sizes) + ")");
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  double total = 0.0;
  std::vector<double> dist(n);
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), inf);
    dist[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          pq.push({dist[v], v});
        }
      }
    }
    for (std::size_t t = s + 1; t < n; ++t) total += dist[t];
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

std::vector<std::size_t> budget_select_edges(const WeightedGraph& g,
                                             const std::vector<std::size_t>& mst_edges,
                                             double budget_km) {
  std::vector<char> in_tree(g.edge_count(), 0);
  double length = 0.0;
  for (auto k : mst_edges) {
    in_tree.at(k) = 1;
    length += g.edges()[k].weight;
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(budget_km));
  if (!std::isfinite(budget_km) || budget_km + slack < length) {
    throw DomainError("budget_select_edges: budget below the spanning-tree length");
  }
  std::vector<std::size_t> selected = mst_edges;
  for (auto k : edge_order(g)) {
    if (in_tree[k]) continue;
    const double next = length + g.edges()[k].weight;
    if (next > budget_km + slack) break;
    length = next;
    selected.push_back(k);
  }
  return selected;
}

void validate_fuel(const FuelSeries& fuel) {
  if (fuel.size() < 2) throw ConfigError("fuel series: need >= 2 entries");
  for (std::size_t i = 0; i < fuel.size(); ++i) {
    if (!std::isfinite(fuel[i].price) || !(fuel[i].price > 0.0)) {
      throw ConfigError("fuel series: price for " + std::to_string(fuel[i].year) + " must be > 0");
    }
    if (i > 0 && fuel[i].year <= fuel[i - 1].year) {
      throw ConfigError("fuel series: years must be strictly increasing");
    }
  }
}

std::vector<YearRecord> run_budget_experiment(const WeightedGraph& g, const FuelSeries& fuel,
                                              const BudgetPolicy& policy) {
  validate_fuel(fuel);
  policy.combiner.validate();
  if (!std::isfinite(policy.budget)) throw ConfigError("budget policy: B must be finite");
  if (policy.combiner.w_model <= 0.0) {
    throw ConfigError("budget policy: modeling weight must be > 0");
  }
  const auto mst = minimum_spanning_tree(g);
  double mst_len = 0.0;
  for (auto k : mst) mst_len += g.edges()[k].weight;
  const double full_len = g.total_weight();
  const double span = full_len - mst_len;

  const auto [lo, hi] = std::minmax_element(fuel.begin(), fuel.end(), [](const auto& a, const auto& b) {
    return a.price < b.price;
  });
  const double p_lo = lo->price;
  const double p_hi = hi->price;

  std::vector<YearRecord> records;
  records.reserve(fuel.size());
  for (const auto& f : fuel) {
    const double oper = p_hi == p_lo ? 0.0 : (f.price - p_lo) / (p_hi - p_lo);
    const double implied = (policy.budget - policy.combiner.w_oper * oper) / policy.combiner.w_model;
    const double modeling_budget = std::clamp(implied, 0.0, 1.0);
    const double budget_km = mst_len + modeling_budget * span;
    const auto edges = budget_select_edges(g, mst, budget_km);
    double length = 0.0;
    for (auto k : edges) length += g.edges()[k].weight;
    const auto sub = g.subgraph(edges);
    records.push_back({f.year, f.price, oper, modeling_budget,
                       span > 0.0 ? std::clamp((length - mst_len) / span, 0.0, 1.0) : 0.0,
                       edges.size(), length, average_shortest_path(sub),
                       implied < 0.0 || implied > 1.0});
  }
  return records;
}

}  // namespace costplex::network
