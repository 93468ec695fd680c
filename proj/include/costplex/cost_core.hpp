#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

// Cost framework: complexity as a combination of modeling cost and operation
// cost, curve normalization, the total-cost minimum, and efficiency.
namespace costplex::cost {

// g(modeling, operation) = w_model * modeling + w_oper * operation.
struct CostCombiner {
  double w_model = 1.0;
  double w_oper = 1.0;

  void validate() const;
};

double total_cost(double modeling, double operation, const CostCombiner& combiner = {});

struct CostPoint {
  double parameter = 0.0;
  double modeling_cost = 0.0;
  double operation_cost = 0.0;
  double total = 0.0;
};

struct CostCurve {
  std::vector<CostPoint> points;
  bool normalized = false;
};

// Builds a curve from parallel channels, computing totals with `combiner`.
// Parameters must be strictly increasing and costs finite and >= 0.
CostCurve make_curve(std::span<const double> parameters, std::span<const double> modeling,
                     std::span<const double> operation, const CostCombiner& combiner = {});

// Per-channel min-max scaling to [0, 1]; a constant channel becomes all zeros.
// Totals are recomputed with `combiner`.
CostCurve normalize_curve(const CostCurve& curve, const CostCombiner& combiner = {});

struct MinimumCost {
  double parameter;
  double total;
  std::size_t index;
  bool interior;  // neither the first nor the last point
};

// Smallest total; ties go to the smaller parameter (earlier index).
MinimumCost argmin_total(const CostCurve& curve);

// benefit / total_cost; throws DomainError unless total_cost > 0.
double efficiency(double benefit, double total_cost);

// CSV: header `parameter,modeling_cost,operation_cost,total_cost`, then one
// row per point. `extra` adds trailing columns (one value per point each).
struct ExtraColumn {
  std::string name;
  std::vector<double> values;
};
void write_csv(std::ostream& out, const CostCurve& curve, std::span<const ExtraColumn> extra = {});

// Reads the four leading columns back; further columns are returned in
// `extra` when non-null. The normalized flag is not part of the CSV.
CostCurve read_csv(std::istream& in, std::vector<ExtraColumn>* extra = nullptr);

nlohmann::json to_json(const CostCurve& curve);
CostCurve curve_from_json(const nlohmann::json& j);

}  // namespace costplex::cost
