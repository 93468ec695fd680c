#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "costplex/cost_core.hpp"
#include "costplex/errors.hpp"
#include "costplex/stats.hpp"
#include "doctest.h"

using namespace costplex;
using namespace costplex::cost;

namespace {

CostCurve curve_of(std::vector<double> m, std::vector<double> o, const CostCombiner& g = {}) {
  std::vector<double> p;
  for (std::size_t i = 0; i < m.size(); ++i) p.push_back(static_cast<double>(i + 1));
  return make_curve(p, m, o, g);
}

CostCurve totals_only(std::vector<double> totals) {
  CostCurve c;
  for (std::size_t i = 0; i < totals.size(); ++i) c.points.push_back({static_cast<double>(i), 0, 0, totals[i]});
  return c;
}

}  // namespace

TEST_CASE("total_cost") {
  CHECK(total_cost(0.3, 0.4) == doctest::Approx(0.7));
  CHECK(total_cost(0.8, 0.0, {2.5, 1.0}) == doctest::Approx(2.0));
  CHECK(total_cost(0.5, 0.5, {2.0, 1.0}) == doctest::Approx(1.5));
  CHECK_THROWS_AS(total_cost(-0.1, 0.4), DomainError);
  CHECK_THROWS_AS(total_cost(0.1, -0.4), DomainError);
  CHECK_THROWS_AS(total_cost(0.1, 0.4, {0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(total_cost(0.1, 0.4, {-1.0, 2.0}), ConfigError);
}

TEST_CASE("unit-weight total is symmetric") {
  std::mt19937_64 eng(2);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(eng), b = u(eng);
    CHECK(total_cost(a, b) == total_cost(b, a));
  }
}

TEST_CASE("normalize_curve") {
  const auto n = normalize_curve(curve_of({10, 20, 30}, {5, 5, 5}));
  CHECK(n.normalized);
  CHECK(n.points[0].modeling_cost == 0.0);
  CHECK(n.points[1].modeling_cost == doctest::Approx(0.5));
  CHECK(n.points[2].modeling_cost == 1.0);
  for (const auto& p : n.points) CHECK(p.operation_cost == 0.0);
  CHECK(n.points[1].total == doctest::Approx(0.5));
  CHECK_THROWS_AS(normalize_curve(curve_of({1}, {1})), ConfigError);
}

TEST_CASE("normalization: range, idempotence, order preservation") {
  std::mt19937_64 eng(8);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> m(3 + eng() % 20), o(m.size());
    for (auto& v : m) v = u(eng);
    for (auto& v : o) v = u(eng);
    const auto c = curve_of(m, o);
    const auto n1 = normalize_curve(c);
    const auto n2 = normalize_curve(n1);
    double mmin = 1, mmax = 0;
    for (std::size_t i = 0; i < n1.points.size(); ++i) {
      const auto& p = n1.points[i];
      CHECK(p.modeling_cost >= 0.0);
      CHECK(p.modeling_cost <= 1.0);
      mmin = std::min(mmin, p.modeling_cost);
      mmax = std::max(mmax, p.modeling_cost);
      CHECK(std::abs(n2.points[i].modeling_cost - p.modeling_cost) <= 1e-12);
      CHECK(std::abs(n2.points[i].operation_cost - p.operation_cost) <= 1e-12);
      CHECK(std::abs(n2.points[i].total - p.total) <= 1e-12);
      for (std::size_t j = 0; j < n1.points.size(); ++j) {
        if (m[i] < m[j]) CHECK(p.modeling_cost <= n1.points[j].modeling_cost);
        if (o[i] < o[j]) CHECK(p.operation_cost <= n1.points[j].operation_cost);
      }
    }
    CHECK(mmin == 0.0);
    CHECK(mmax == 1.0);
  }
}

TEST_CASE("conservation: complementary channels give a constant unit-weight total") {
  std::vector<double> oper{0.0, 0.1, 0.35, 0.6, 0.9, 1.0};
  std::vector<double> model;
  for (double v : oper) model.push_back(1.0 - v);
  const auto n = normalize_curve(curve_of(model, oper));
  for (const auto& p : n.points) CHECK(p.total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("argmin_total") {
  auto m = argmin_total(totals_only({1.0, 0.2, 0.8}));
  CHECK(m.index == 1);
  CHECK(m.interior);
  m = argmin_total(totals_only({0.5, 0.5, 0.9}));
  CHECK(m.index == 0);
  CHECK(!m.interior);
  CHECK_THROWS_AS(argmin_total(CostCurve{}), ConfigError);
}

TEST_CASE("argmin invariant under positive affine maps of the totals") {
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> t(3 + eng() % 10);
    for (auto& v : t) v = u(eng);
    const double a = 0.1 + 10.0 * u(eng), b = 5.0 * (u(eng) - 0.5);
    std::vector<double> mapped;
    for (double v : t) mapped.push_back(a * v + b);
    CHECK(argmin_total(totals_only(t)).index == argmin_total(totals_only(mapped)).index);
  }
}

TEST_CASE("efficiency") {
  CHECK(efficiency(1.0, 2.0) == doctest::Approx(0.5));
  CHECK(efficiency(0.0, 3.0) == 0.0);
  CHECK(efficiency(3.0, 4.0) == doctest::Approx(2.0 * efficiency(3.0, 8.0)));
  CHECK_THROWS_AS(efficiency(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(efficiency(1.0, -1.0), DomainError);
}

TEST_CASE("make_curve rejects non-increasing parameters") {
  const std::vector<double> p{1, 1, 2}, m{1, 2, 3}, o{1, 2, 3};
  CHECK_THROWS_AS(make_curve(p, m, o), ConfigError);
}

TEST_CASE("CSV and JSON re-parse to the same curve") {
  const auto c = normalize_curve(curve_of({1.5, 2.25, 1e-7, 40}, {0.1, 1.0 / 3.0, 7, 2}));
  std::stringstream ss;
  const std::vector<ExtraColumn> extra{{"stddev_total", {0.1, 0.2, 0.3, 1.0 / 7.0}}};
  write_csv(ss, c, extra);
  std::vector<ExtraColumn> back_extra;
  const auto back = read_csv(ss, &back_extra);
  REQUIRE(back.points.size() == c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    CHECK(back.points[i].parameter == c.points[i].parameter);
    CHECK(back.points[i].modeling_cost == c.points[i].modeling_cost);
    CHECK(back.points[i].operation_cost == c.points[i].operation_cost);
    CHECK(back.points[i].total == c.points[i].total);
  }
  REQUIRE(back_extra.size() == 1);
  CHECK(back_extra[0].name == "stddev_total");
  CHECK(back_extra[0].values == extra[0].values);

  const auto j = to_json(c);
  const auto from = curve_from_json(nlohmann::json::parse(j.dump()));
  CHECK(from.normalized);
  for (std::size_t i = 0; i < c.points.size(); ++i) CHECK(from.points[i].total == c.points[i].total);
}

TEST_CASE("stats helpers") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 6, 8, 10};
  const std::vector<double> z{5, 3, 4, 1, 2};
  const auto fit = stats::least_squares(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(0.0));
  CHECK(stats::spearman(x, y) == doctest::Approx(1.0));
  // d = (4, 1, 1, 3, 3), sum d^2 = 36, rho = 1 - 6*36/(5*24) = -0.8
  CHECK(stats::spearman(x, z) == doctest::Approx(-0.8));
  const std::vector<double> ties{1, 1, 2};
  CHECK(stats::ranks(ties) == std::vector<double>{1.5, 1.5, 3.0});
  CHECK(stats::sample_stddev(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(1.2909944487));
}
