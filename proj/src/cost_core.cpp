#include "costplex/cost_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "costplex/errors.hpp"
#include "costplex/format.hpp"

namespace costplex::cost {

void CostCombiner::validate() const {
  if (!std::isfinite(w_model) || !std::isfinite(w_oper) || w_model < 0.0 || w_oper < 0.0) {
    throw ConfigError("CostCombiner: weights must be finite and >= 0");
  }
  if (w_model + w_oper <= 0.0) throw ConfigError("CostCombiner: weights sum to zero");
}

double total_cost(double modeling, double operation, const CostCombiner& combiner) {
  combiner.validate();
  if (!std::isfinite(modeling) || !std::isfinite(operation)) {
    throw DomainError("total_cost: non-finite cost");
  }
  if (modeling < 0.0 || operation < 0.0) throw DomainError("total_cost: negative cost");
  return combiner.w_model * modeling + combiner.w_oper * operation;
}

CostCurve make_curve(std::span<const double> parameters, std::span<const double> modeling,
                     std::span<const double> operation, const CostCombiner& combiner) {
  if (parameters.size() != modeling.size() || parameters.size() != operation.size()) {
    throw ConfigError("make_curve: channel lengths differ");
  }
  CostCurve curve;
  curve.points.reserve(parameters.size());
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i > 0 && !(parameters[i] > parameters[i - 1])) {
      throw ConfigError("make_curve: parameters must be strictly increasing");
    }
    curve.points.push_back({parameters[i], modeling[i], operation[i],
                            total_cost(modeling[i], operation[i], combiner)});
  }
  return curve;
}

CostCurve normalize_curve(const CostCurve& curve, const CostCombiner& combiner) {
  if (curve.points.size() < 2) throw ConfigError("normalize_curve: need >= 2 points");
  combiner.validate();

  auto rescale = [&](double CostPoint::*channel) {
    const auto [lo, hi] = std::minmax_element(
        curve.points.begin(), curve.points.end(),
        [&](const CostPoint& a, const CostPoint& b) { return a.*channel < b.*channel; });
    return std::pair{(*lo).*channel, (*hi).*channel};
  };
  const auto [m_lo, m_hi] = rescale(&CostPoint::modeling_cost);
  const auto [o_lo, o_hi] = rescale(&CostPoint::operation_cost);
  auto scale = [](double v, double lo, double hi) {
    if (hi == lo) return 0.0;
    return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  };

  CostCurve out;
  out.normalized = true;
  out.points.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    const double m = scale(p.modeling_cost, m_lo, m_hi);
    const double o = scale(p.operation_cost, o_lo, o_hi);
    out.points.push_back({p.parameter, m, o, total_cost(m, o, combiner)});
  }
  return out;
}

MinimumCost argmin_total(const CostCurve& curve) {
  if (curve.points.empty()) throw ConfigError("argmin_total: empty curve");
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i].total < curve.points[best].total) best = i;
  }
  const auto& p = curve.points[best];
  return {p.parameter, p.total, best, best > 0 && best + 1 < curve.points.size()};
}

double efficiency(double benefit, double total_cost) {
  if (!(total_cost > 0.0)) throw DomainError("efficiency: total cost must be > 0");
  return benefit / total_cost;
}

void write_csv(std::ostream& out, const CostCurve& curve, std::span<const ExtraColumn> extra) {
  for (const auto& col : extra) {
    if (col.values.size() != curve.points.size()) {
      throw ConfigError("write_csv: column '" + col.name + "' has wrong length");
    }
  }
  out << "parameter,modeling_cost,operation_cost,total_cost";
  for (const auto& col : extra) out << ',' << col.name;
  out << '\n';
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    out << format_real(p.parameter) << ',' << format_real(p.modeling_cost) << ','
        << format_real(p.operation_cost) << ',' << format_real(p.total);
    for (const auto& col : extra) out << ',' << format_real(col.values[i]);
    out << '\n';
  }
}

CostCurve read_csv(std::istream& in, std::vector<ExtraColumn>* extra) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("cost CSV: missing header");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected{"parameter", "modeling_cost", "operation_cost",
                                          "total_cost"};
  if (header.size() < 4 || !std::equal(expected.begin(), expected.end(), header.begin())) {
    throw ConfigError("cost CSV: header must start with " + std::string("parameter,modeling_cost,operation_cost,total_cost"));
  }
  std::vector<ExtraColumn> cols;
  for (std::size_t k = 4; k < header.size(); ++k) cols.push_back({header[k], {}});

  CostCurve curve;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw ConfigError("cost CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    const std::string where = "cost CSV line " + std::to_string(line_no);
    curve.points.push_back({parse_real(f[0], where), parse_real(f[1], where),
                            parse_real(f[2], where), parse_real(f[3], where)});
    for (std::size_t k = 4; k < f.size(); ++k) cols[k - 4].values.push_back(parse_real(f[k], where));
  }
  if (extra) *extra = std::move(cols);
  return curve;
}

nlohmann::json to_json(const CostCurve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"parameter", p.parameter},
                      {"modeling_cost", p.modeling_cost},
                      {"operation_cost", p.operation_cost},
                      {"total_cost", p.total}});
  }
  return {{"normalized", curve.normalized}, {"points", std::move(points)}};
}

CostCurve curve_from_json(const nlohmann::json& j) {
  CostCurve curve;
  try {
    curve.normalized = j.at("normalized").get<bool>();
    for (const auto& p : j.at("points")) {
      curve.points.push_back({p.at("parameter").get<double>(), p.at("modeling_cost").get<double>(),
                              p.at("operation_cost").get<double>(),
                              p.at("total_cost").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cost JSON: ") + e.what());
  }
  return curve;
}

}  // namespace costplex::cost
