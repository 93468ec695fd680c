#include "costplex/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "costplex/errors.hpp"
#include "costplex/format.hpp"

namespace costplex::io {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return in;
}

// Reads the header and checks it against the accepted column sets.
std::vector<std::string> read_header(std::istream& in, const std::string& name,
                                     const std::vector<std::vector<std::string>>& accepted) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(name + ": empty file, header required");
  auto header = split_csv_line(line);
  for (const auto& cols : accepted) {
    if (header == cols) return header;
  }
  std::string want;
  for (const auto& cols : accepted) {
    if (!want.empty()) want += " or ";
    for (std::size_t i = 0; i < cols.size(); ++i) want += (i ? "," : "") + cols[i];
  }
  throw ConfigError(name + " line 1: header must be " + want);
}

std::string where(const std::string& name, std::size_t line_no) {
  return name + " line " + std::to_string(line_no);
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

network::WeightedGraph read_graph(std::istream& nodes, std::istream& edges,
                                  const std::string& nodes_name, const std::string& edges_name) {
  network::WeightedGraph g;
  read_header(nodes, nodes_name, {{"id", "lat", "lon"}});
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(nodes, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto f = split_csv_line(line);
    const auto at = where(nodes_name, line_no);
    if (f.size() != 3) throw ConfigError(at + ": expected 3 fields (id,lat,lon)");
    const network::GeoPoint p{parse_real(f[1], at + " lat"), parse_real(f[2], at + " lon")};
    if (!(p.lat_deg >= -90.0 && p.lat_deg <= 90.0) || !(p.lon_deg >= -180.0 && p.lon_deg <= 180.0)) {
      throw ConfigError(at + ": coordinates out of range");
    }
    try {
      g.add_node(f[0], p);
    } catch (const ConfigError& e) {
      throw ConfigError(at + ": " + e.what());
    }
  }

  const auto header = read_header(edges, edges_name, {{"src", "dst"}, {"src", "dst", "weight_km"}});
  line_no = 1;
  while (std::getline(edges, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto f = split_csv_line(line);
    const auto at = where(edges_name, line_no);
    if (f.size() == 2 && header.size() == 3) f.emplace_back();
    if (f.size() != header.size()) {
      throw ConfigError(at + ": expected " + std::to_string(header.size()) + " fields");
    }
    const auto u = g.find(f[0]);
    const auto v = g.find(f[1]);
    if (!u) throw ConfigError(at + ": unknown node id '" + f[0] + "'");
    if (!v) throw ConfigError(at + ": unknown node id '" + f[1] + "'");
    double w;
    if (f.size() == 3 && !f[2].empty()) {
      w = parse_real(f[2], at + " weight_km");
    } else {
      w = network::haversine_km(*g.location(*u), *g.location(*v));
    }
    try {
      g.add_edge(*u, *v, w);
    } catch (const ConfigError& e) {
      throw ConfigError(at + ": " + e.what());
    }
  }
  if (g.node_count() < 2) throw ConfigError(nodes_name + ": need >= 2 nodes");
  const auto sizes = g.component_sizes();
  if (sizes.size() > 1) {
    std::string msg = "graph is disconnected: " + std::to_string(sizes.size()) + " components of sizes";
    for (auto s : sizes) msg += " " + std::to_string(s);
    throw DomainError(msg);
  }
  return g;
}

network::WeightedGraph load_graph(const std::filesystem::path& nodes_path,
                                  const std::filesystem::path& edges_path) {
  auto nodes = open_input(nodes_path);
  auto edges = open_input(edges_path);
  return read_graph(nodes, edges, nodes_path.string(), edges_path.string());
}

network::FuelSeries read_fuel(std::istream& in, const std::string& name) {
  read_header(in, name, {{"year", "price_usd_per_gallon"}});
  network::FuelSeries fuel;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto f = split_csv_line(line);
    const auto at = where(name, line_no);
    if (f.size() != 2) throw ConfigError(at + ": expected 2 fields (year,price_usd_per_gallon)");
    fuel.push_back({static_cast<int>(parse_int(f[0], at + " year")),
                    parse_real(f[1], at + " price")});
  }
  network::validate_fuel(fuel);
  return fuel;
}

network::FuelSeries load_fuel(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_fuel(in, path.string());
}

void write_year_records_csv(std::ostream& out, const std::vector<network::YearRecord>& records) {
  out << "year,fuel_price,operation_cost,modeling_cost,edge_count,total_edge_length_km,"
         "avg_shortest_path_km\n";
  for (const auto& r : records) {
    out << r.year << ',' << format_real(r.fuel_price) << ',' << format_real(r.operation_cost) << ','
        << format_real(r.modeling_cost) << ',' << r.edge_count << ','
        << format_real(r.total_edge_length_km) << ',' << format_real(r.average_shortest_path_km)
        << '\n';
  }
}

std::vector<network::YearRecord> read_year_records_csv(std::istream& in) {
  read_header(in, "year records",
              {{"year", "fuel_price", "operation_cost", "modeling_cost", "edge_count",
                "total_edge_length_km", "avg_shortest_path_km"}});
  std::vector<network::YearRecord> records;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto f = split_csv_line(line);
    const auto at = where("year records", line_no);
    if (f.size() != 7) throw ConfigError(at + ": expected 7 fields");
    network::YearRecord r{};
    r.year = static_cast<int>(parse_int(f[0], at));
    r.fuel_price = parse_real(f[1], at);
    r.operation_cost = parse_real(f[2], at);
    r.modeling_cost = parse_real(f[3], at);
    r.edge_count = static_cast<std::size_t>(parse_int(f[4], at));
    r.total_edge_length_km = parse_real(f[5], at);
    r.average_shortest_path_km = parse_real(f[6], at);
    records.push_back(r);
  }
  return records;
}

nlohmann::json year_records_to_json(const std::vector<network::YearRecord>& records) {
  auto rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"year", r.year},
                    {"fuel_price", r.fuel_price},
                    {"operation_cost", r.operation_cost},
                    {"modeling_budget", r.modeling_budget},
                    {"modeling_cost", r.modeling_cost},
                    {"edge_count", r.edge_count},
                    {"total_edge_length_km", r.total_edge_length_km},
                    {"avg_shortest_path_km", r.average_shortest_path_km},
                    {"clamped", r.clamped}});
  }
  return rows;
}

void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& write) {
  auto tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
      write(out);
      out.flush();
      if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace costplex::io
