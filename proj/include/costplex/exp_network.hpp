#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "costplex/cost_core.hpp"

// Airport-network experiment: MST baseline, edge re-integration under a
// constant-complexity budget as fuel price varies, average shortest path.
namespace costplex::network {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
  double lat_deg;
  double lon_deg;
};

// Great-circle distance in km. Throws DomainError on out-of-range coordinates.
double haversine_km(GeoPoint a, GeoPoint b);

struct Edge {
  std::size_t u;
  std::size_t v;
  double weight;
};

// Undirected, simple graph. Node ids are unique strings; edges reference nodes
// by index in insertion order.
class WeightedGraph {
 public:
  std::size_t add_node(const std::string& id, std::optional<GeoPoint> location = std::nullopt);
  // Throws ConfigError on self-loops, duplicates, or non-positive weights.
  std::size_t add_edge(std::size_t u, std::size_t v, double weight);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& id(std::size_t node) const { return ids_.at(node); }
  const std::optional<GeoPoint>& location(std::size_t node) const { return locations_.at(node); }
  std::optional<std::size_t> find(const std::string& id) const;

  double total_weight() const;
  // Sizes of connected components, largest first.
  std::vector<std::size_t> component_sizes() const;
  bool connected() const { return component_sizes().size() <= 1; }
  // Same nodes, only the listed edges.
  WeightedGraph subgraph(const std::vector<std::size_t>& edge_indices) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::optional<GeoPoint>> locations_;
  std::map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index_;
};

// Edge indices in ascending (weight, smaller endpoint, larger endpoint) order.
std::vector<std::size_t> edge_order(const WeightedGraph& g);

// Kruskal; returns edge indices in the order they were accepted. Throws
// DomainError listing component sizes when g is disconnected.
std::vector<std::size_t> minimum_spanning_tree(const WeightedGraph& g);

// Mean weighted shortest-path length over unordered node pairs (Dijkstra from
// every node). Throws DomainError when disconnected or with < 2 nodes.
double average_shortest_path(const WeightedGraph& g);

// Starting from the MST, appends non-MST edges in edge_order while the total
// length stays within budget_km (relative slack 1e-12), stopping at the first
// edge that would exceed it. Throws DomainError if the budget is below the
// MST length.
std::vector<std::size_t> budget_select_edges(const WeightedGraph& g,
                                             const std::vector<std::size_t>& mst_edges,
                                             double budget_km);

struct FuelSample {
  int year;
  double price;
};
using FuelSeries = std::vector<FuelSample>;

void validate_fuel(const FuelSeries& fuel);

struct BudgetPolicy {
  double budget = 1.0;  // B, constant total complexity
  cost::CostCombiner combiner;
};

struct YearRecord {
  int year;
  double fuel_price;
  double operation_cost;   // normalized fuel price
  double modeling_budget;  // normalized, (B - w_oper * operation) / w_model, clamped
  double modeling_cost;    // normalized total length actually selected
  std::size_t edge_count;
  double total_edge_length_km;
  double average_shortest_path_km;
  bool clamped;  // implied budget fell outside [0, 1]
};

std::vector<YearRecord> run_budget_experiment(const WeightedGraph& g, const FuelSeries& fuel,
                                              const BudgetPolicy& policy = {});

}  // namespace costplex::network
