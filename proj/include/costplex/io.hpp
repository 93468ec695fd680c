#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costplex/exp_network.hpp"

// Dataset ingestion and result files.
namespace costplex::io {

// Nodes CSV `id,lat,lon` and edges CSV `src,dst[,weight_km]`; a missing or
// empty weight is the haversine distance of the endpoints. Errors name the
// file and line. The result is checked for connectivity.
network::WeightedGraph load_graph(const std::filesystem::path& nodes_path,
                                  const std::filesystem::path& edges_path);
network::WeightedGraph read_graph(std::istream& nodes, std::istream& edges,
                                  const std::string& nodes_name = "nodes",
                                  const std::string& edges_name = "edges");

// `year,price_usd_per_gallon`.
network::FuelSeries load_fuel(const std::filesystem::path& path);
network::FuelSeries read_fuel(std::istream& in, const std::string& name = "fuel");

// `year,fuel_price,operation_cost,modeling_cost,edge_count,total_edge_length_km,avg_shortest_path_km`
void write_year_records_csv(std::ostream& out, const std::vector<network::YearRecord>& records);
std::vector<network::YearRecord> read_year_records_csv(std::istream& in);
nlohmann::json year_records_to_json(const std::vector<network::YearRecord>& records);

// Writes through a temporary sibling file and renames it into place, so the
// destination is either untouched or complete. An exception from `write`
// removes the temporary and propagates.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& write);

std::string read_file(const std::filesystem::path& path);

}  // namespace costplex::io
