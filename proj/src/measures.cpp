#include "costplex/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "costplex/errors.hpp"
#include "costplex/lz77.hpp"
#include "costplex/random.hpp"
#include "costplex/stats.hpp"

namespace costplex::measures {

// ---------------------------------------------------------------------------
// Entropy

SymbolDistribution::SymbolDistribution(std::map<std::string, std::uint64_t> counts)
    : counts_(std::move(counts)) {
  for (const auto& [symbol, count] : counts_) total_ += count;
}

void SymbolDistribution::add(const std::string& symbol, std::uint64_t count) {
  counts_[symbol] += count;
  total_ += count;
}

std::size_t SymbolDistribution::symbol_count() const {
  return static_cast<std::size_t>(std::count_if(
      counts_.begin(), counts_.end(), [](const auto& kv) { return kv.second > 0; }));
}

SymbolDistribution tokenize(std::istream& in, bool lowercase) {
  SymbolDistribution dist;
  std::string token;
  while (in >> token) {
    if (lowercase) {
      std::transform(token.begin(), token.end(), token.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    dist.add(token);
  }
  return dist;
}

double shannon_entropy(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw DomainError("shannon_entropy: empty distribution");
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;  // 0 log 0 = 0
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

double shannon_entropy(const SymbolDistribution& dist) {
  std::vector<std::uint64_t> counts;
  counts.reserve(dist.counts().size());
  for (const auto& [symbol, count] : dist.counts()) counts.push_back(count);
  return shannon_entropy(counts);
}

// ---------------------------------------------------------------------------
// Binary rasters

BinaryGrid2D::BinaryGrid2D(std::size_t width, std::size_t height)
    : width_(width), height_(height), cells_(width * height, 0) {
  if (width == 0 || height == 0) throw ConfigError("BinaryGrid2D: zero dimension");
}

std::size_t BinaryGrid2D::occupied() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

// Next whitespace-separated token of a plain PBM, skipping comments. Cells may
// be packed without separators, so a token of 0/1 digits is split by caller.
bool next_pbm_token(std::istream& in, std::string& token) {
  token.clear();
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      if (!token.empty()) return true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) return true;
      continue;
    }
    token.push_back(c);
  }
  return !token.empty();
}

std::size_t parse_dimension(const std::string& token, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || v == 0) {
    throw ConfigError(std::string("PBM: invalid ") + what + " '" + token + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

BinaryGrid2D BinaryGrid2D::read_pbm(std::istream& in) {
  std::string token;
  if (!next_pbm_token(in, token) || token != "P1") {
    throw ConfigError("PBM: expected 'P1' magic");
  }
  if (!next_pbm_token(in, token)) throw ConfigError("PBM: missing width");
  const std::size_t width = parse_dimension(token, "width");
  if (!next_pbm_token(in, token)) throw ConfigError("PBM: missing height");
  const std::size_t height = parse_dimension(token, "height");

  BinaryGrid2D grid(width, height);
  const std::size_t total = width * height;
  std::size_t filled = 0;
  while (filled < total && next_pbm_token(in, token)) {
    for (char c : token) {
      if (c != '0' && c != '1') throw ConfigError("PBM: invalid cell character '" + std::string(1, c) + "'");
      if (filled == total) throw ConfigError("PBM: more cells than width*height");
      grid.cells_[filled++] = c == '1' ? 1 : 0;
    }
  }
  if (filled != total) {
    throw ConfigError("PBM: expected " + std::to_string(total) + " cells, got " +
                      std::to_string(filled));
  }
  if (next_pbm_token(in, token)) throw ConfigError("PBM: trailing data after cells");
  return grid;
}

void BinaryGrid2D::write_pbm(std::ostream& out) const {
  out << "P1\n" << width_ << ' ' << height_ << '\n';
  for (std::size_t r = 0; r < height_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) {
      if (c) out << ' ';
      out << (at(r, c) ? '1' : '0');
    }
    out << '\n';
  }
}

namespace {

struct Point {
  double x;
  double y;
};

void koch_segment(Point a, Point b, int depth, std::vector<Point>& out) {
  if (depth == 0) {
    out.push_back(b);
    return;
  }
  const Point p1{a.x + (b.x - a.x) / 3.0, a.y + (b.y - a.y) / 3.0};
  const Point p3{a.x + 2.0 * (b.x - a.x) / 3.0, a.y + 2.0 * (b.y - a.y) / 3.0};
  // Peak: rotate (p3 - p1) by +60 degrees around p1.
  const double c = 0.5;
  const double s = std::sqrt(3.0) / 2.0;
  const double dx = p3.x - p1.x;
  const double dy = p3.y - p1.y;
  const Point p2{p1.x + c * dx - s * dy, p1.y + s * dx + c * dy};
  koch_segment(a, p1, depth - 1, out);
  koch_segment(p1, p2, depth - 1, out);
  koch_segment(p2, p3, depth - 1, out);
  koch_segment(p3, b, depth - 1, out);
}

void bresenham(BinaryGrid2D& grid, long x0, long y0, long x1, long y1) {
  const long dx = std::abs(x1 - x0);
  const long dy = -std::abs(y1 - y0);
  const long sx = x0 < x1 ? 1 : -1;
  const long sy = y0 < y1 ? 1 : -1;
  long err = dx + dy;
  const auto w = static_cast<long>(grid.width());
  const auto h = static_cast<long>(grid.height());
  while (true) {
    if (x0 >= 0 && x0 < w && y0 >= 0 && y0 < h) {
      grid.set(static_cast<std::size_t>(y0), static_cast<std::size_t>(x0));
    }
    if (x0 == x1 && y0 == y1) break;
    const long e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace

BinaryGrid2D koch_raster(int depth, int grid_exponent) {
  if (depth < 0 || depth > 10) throw ConfigError("koch_raster: depth must be in [0, 10]");
  if (grid_exponent < 0) grid_exponent = depth;
  if (grid_exponent < 1 || grid_exponent > 9) {
    throw ConfigError("koch_raster: grid exponent must be in [1, 9]");
  }
  std::size_t side = 1;
  for (int i = 0; i < grid_exponent; ++i) side *= 3;

  const double span = static_cast<double>(side - 1);
  const double base_row = std::floor(span * 2.0 / 3.0);
  std::vector<Point> pts{{0.0, 0.0}};
  koch_segment({0.0, 0.0}, {span, 0.0}, depth, pts);

  BinaryGrid2D grid(side, side);
  // Curve y grows upward; rows grow downward.
  auto col = [](const Point& p) { return std::lround(p.x); };
  auto row = [&](const Point& p) { return std::lround(base_row - p.y); };
  for (std::size_t i = 1; i < pts.size(); ++i) {
    bresenham(grid, col(pts[i - 1]), row(pts[i - 1]), col(pts[i]), row(pts[i]));
  }
  return grid;
}

BinaryGrid2D line_raster(std::size_t side) {
  BinaryGrid2D grid(side, side);
  for (std::size_t c = 0; c < side; ++c) grid.set(side / 2, c);
  return grid;
}

// ---------------------------------------------------------------------------
// Box counting and lacunarity

BoxCountingResult box_counting_dimension(const BinaryGrid2D& grid,
                                         std::span<const std::size_t> box_sizes) {
  std::vector<std::size_t> sizes(box_sizes.begin(), box_sizes.end());
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 3) throw ConfigError("box_counting_dimension: need >= 3 distinct box sizes");
  const std::size_t limit = std::min(grid.width(), grid.height());
  for (auto s : sizes) {
    if (s == 0 || s > limit) {
      throw ConfigError("box_counting_dimension: box size " + std::to_string(s) +
                        " outside [1, " + std::to_string(limit) + "]");
    }
  }
  if (grid.occupied() == 0) throw DomainError("box_counting_dimension: empty grid");

  BoxCountingResult result;
  std::vector<double> log_s;
  std::vector<double> log_n;
  for (auto s : sizes) {
    const std::size_t bw = (grid.width() + s - 1) / s;
    const std::size_t bh = (grid.height() + s - 1) / s;
    std::vector<std::uint8_t> hit(bw * bh, 0);
    for (std::size_t r = 0; r < grid.height(); ++r) {
      for (std::size_t c = 0; c < grid.width(); ++c) {
        if (grid.at(r, c)) hit[(r / s) * bw + c / s] = 1;
      }
    }
    const auto n = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
    result.counts.push_back({s, n});
    log_s.push_back(std::log(static_cast<double>(s)));
    log_n.push_back(std::log(static_cast<double>(n)));
  }
  const auto fit = stats::least_squares(log_s, log_n);
  result.dimension = std::clamp(-fit.slope, 0.0, 2.0);
  return result;
}

std::vector<double> lacunarity(const BinaryGrid2D& grid, std::span<const std::size_t> box_sizes) {
  const std::size_t w = grid.width();
  const std::size_t h = grid.height();
  for (auto s : box_sizes) {
    if (s == 0 || s > std::min(w, h)) {
      throw ConfigError("lacunarity: window size " + std::to_string(s) + " does not fit the grid");
    }
  }
  if (grid.occupied() == 0) throw DomainError("lacunarity: grid has zero occupancy");

  // Summed-area table with a zero border row/column.
  std::vector<std::uint64_t> sat((w + 1) * (h + 1), 0);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      sat[(r + 1) * (w + 1) + c + 1] = (grid.at(r, c) ? 1 : 0) + sat[r * (w + 1) + c + 1] +
                                       sat[(r + 1) * (w + 1) + c] - sat[r * (w + 1) + c];
    }
  }
  std::vector<double> out;
  out.reserve(box_sizes.size());
  for (auto s : box_sizes) {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t windows = 0;
    for (std::size_t r = 0; r + s <= h; ++r) {
      for (std::size_t c = 0; c + s <= w; ++c) {
        const std::uint64_t m = sat[(r + s) * (w + 1) + c + s] - sat[r * (w + 1) + c + s] -
                                sat[(r + s) * (w + 1) + c] + sat[r * (w + 1) + c];
        const auto md = static_cast<double>(m);
        sum += md;
        sum_sq += md * md;
        ++windows;
      }
    }
    const double n = static_cast<double>(windows);
    // E[m^2] / E[m]^2 = n * sum_sq / sum^2, which is >= 1 by Cauchy-Schwarz.
    out.push_back(std::max(1.0, n * sum_sq / (sum * sum)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lyapunov exponent

double TrajectoryPair::mean_log_growth() const {
  if (step_log_growth.empty()) return 0.0;
  double total = 0.0;
  for (double g : step_log_growth) total += g;
  return total / static_cast<double>(step_log_growth.size());
}

namespace {

double apply_map(MapId map, double param, double x) {
  switch (map) {
    case MapId::logistic:
      return param * x * (1.0 - x);
  }
  throw ConfigError("unknown map");
}

void check_in_domain(double x, std::size_t step) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw DomainError("iterate_map_pair: trajectory left [0, 1] at step " + std::to_string(step));
  }
}

}  // namespace

TrajectoryPair iterate_map_pair(MapId map, double param, double x0, double delta0,
                                std::size_t steps, bool renormalize) {
  if (!(x0 > 0.0 && x0 < 1.0)) throw ConfigError("iterate_map_pair: x0 must lie in (0, 1)");
  if (!(delta0 > 0.0 && delta0 <= 1e-6)) {
    throw ConfigError("iterate_map_pair: delta0 must lie in (0, 1e-6]");
  }
  if (steps < 10) throw ConfigError("iterate_map_pair: need >= 10 steps");
  if (!std::isfinite(param)) throw ConfigError("iterate_map_pair: non-finite parameter");

  // Partner placed delta0 away on whichever side stays in [0, 1].
  auto partner = [delta0](double x, double direction) {
    double y = x + std::copysign(delta0, direction);
    if (y < 0.0 || y > 1.0) y = x - std::copysign(delta0, direction);
    return y;
  };

  TrajectoryPair pair;
  pair.series_a.reserve(steps + 1);
  pair.series_b.reserve(steps + 1);
  if (renormalize) pair.step_log_growth.reserve(steps);

  double a = x0;
  double b = partner(x0, 1.0);
  pair.series_a.push_back({a});
  pair.series_b.push_back({b});
  for (std::size_t step = 1; step <= steps; ++step) {
    a = apply_map(map, param, a);
    b = apply_map(map, param, b);
    check_in_domain(a, step);
    check_in_domain(b, step);
    if (renormalize) {
      const double d = b - a;
      if (d == 0.0) {
        pair.step_log_growth.push_back(-std::numeric_limits<double>::infinity());
        b = partner(a, 1.0);
      } else {
        pair.step_log_growth.push_back(std::log(std::abs(d) / delta0));
        b = partner(a, d);
      }
    }
    pair.series_a.push_back({a});
    pair.series_b.push_back({b});
  }
  return pair;
}

double largest_lyapunov(const TrajectoryPair& pair, LyapunovWindow window) {
  const std::size_t n = pair.series_a.size();
  if (n < 2 || pair.series_b.size() != n) {
    throw ConfigError("largest_lyapunov: need two equal-length series of >= 2 states");
  }
  if (!(pair.dt > 0.0)) throw ConfigError("largest_lyapunov: dt must be positive");
  if (pair.renormalized() && pair.step_log_growth.size() + 1 != n) {
    throw ConfigError("largest_lyapunov: log-growth length does not match series");
  }
  const std::size_t end = std::min(window.end, n);
  if (window.begin + 2 > end) throw ConfigError("largest_lyapunov: fit window holds < 2 points");

  auto separation = [&](std::size_t i) {
    const auto& xa = pair.series_a[i];
    const auto& xb = pair.series_b[i];
    if (xa.size() != xb.size()) throw ConfigError("largest_lyapunov: state dimension mismatch");
    double ss = 0.0;
    for (std::size_t k = 0; k < xa.size(); ++k) ss += (xa[k] - xb[k]) * (xa[k] - xb[k]);
    return std::sqrt(ss);
  };

  std::vector<double> t;
  std::vector<double> log_d;
  t.reserve(end - window.begin);
  log_d.reserve(end - window.begin);
  if (pair.renormalized()) {
    const double d0 = separation(0);
    if (d0 == 0.0) throw DomainError("largest_lyapunov: zero initial separation");
    double acc = std::log(d0);
    for (std::size_t i = 0; i < end; ++i) {
      if (i > 0) acc += pair.step_log_growth[i - 1];
      if (i < window.begin) continue;
      if (!std::isfinite(acc)) {
        throw DomainError("largest_lyapunov: separation collapsed to zero at step " +
                          std::to_string(i));
      }
      t.push_back(static_cast<double>(i) * pair.dt);
      log_d.push_back(acc);
    }
  } else {
    for (std::size_t i = window.begin; i < end; ++i) {
      const double d = separation(i);
      if (d == 0.0) {
        throw DomainError("largest_lyapunov: zero separation at step " + std::to_string(i) +
                          "; use the renormalized mode");
      }
      t.push_back(static_cast<double>(i) * pair.dt);
      log_d.push_back(std::log(d));
    }
  }
  return stats::least_squares(t, log_d).slope;
}

// ---------------------------------------------------------------------------
// Abelian sandpile

Sandpile::Sandpile(std::size_t width, std::size_t height, int threshold)
    : width_(width), height_(height), threshold_(threshold), heights_(width * height, 0) {
  if (width < 2 || height < 2) throw ConfigError("Sandpile: width and height must be >= 2");
  if (threshold < 4) throw ConfigError("Sandpile: threshold must be >= 4");
}

void Sandpile::add(std::size_t row, std::size_t col, int grains) {
  if (row >= height_ || col >= width_) throw ConfigError("Sandpile: cell out of range");
  if (grains < 0) throw ConfigError("Sandpile: negative grain count");
  heights_[row * width_ + col] += grains;
  added_ += static_cast<std::uint64_t>(grains);
}

namespace {

template <typename Worklist, typename Pop>
std::uint64_t relax_worklist(std::vector<int>& h, std::size_t width, std::size_t height,
                             int threshold, std::uint64_t& lost, Worklist& work, Pop pop) {
  std::uint64_t topples = 0;
  while (!work.empty()) {
    const std::size_t cell = pop(work);
    if (h[cell] < threshold) continue;
    h[cell] -= 4;
    ++topples;
    if (h[cell] >= threshold) work.push_back(cell);
    const std::size_t r = cell / width;
    const std::size_t c = cell % width;
    auto give = [&](bool inside, std::size_t target) {
      if (!inside) {
        ++lost;
        return;
      }
      if (++h[target] == threshold) work.push_back(target);
    };
    give(r > 0, cell - width);
    give(r + 1 < height, cell + width);
    give(c > 0, cell - 1);
    give(c + 1 < width, cell + 1);
  }
  return topples;
}

}  // namespace

std::uint64_t Sandpile::relax(ToppleOrder order) {
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (heights_[i] >= threshold_) work.push_back(i);
  }
  if (order == ToppleOrder::stack) {
    return relax_worklist(heights_, width_, height_, threshold_, lost_, work, [](auto& w) {
      const std::size_t v = w.back();
      w.pop_back();
      return v;
    });
  }
  return relax_worklist(heights_, width_, height_, threshold_, lost_, work, [](auto& w) {
    const std::size_t v = w.front();
    w.pop_front();
    return v;
  });
}

std::uint64_t Sandpile::drop(std::size_t row, std::size_t col, ToppleOrder order) {
  add(row, col, 1);
  const std::size_t cell = row * width_ + col;
  if (heights_[cell] < threshold_) return 0;
  std::deque<std::size_t> work{cell};
  if (order == ToppleOrder::stack) {
    return relax_worklist(heights_, width_, height_, threshold_, lost_, work, [](auto& w) {
      const std::size_t v = w.back();
      w.pop_back();
      return v;
    });
  }
  return relax_worklist(heights_, width_, height_, threshold_, lost_, work, [](auto& w) {
    const std::size_t v = w.front();
    w.pop_front();
    return v;
  });
}

bool Sandpile::stable() const {
  return std::all_of(heights_.begin(), heights_.end(), [&](int v) { return v < threshold_; });
}

std::int64_t Sandpile::total_height() const {
  std::int64_t total = 0;
  for (int v : heights_) total += v;
  return total;
}

SandpileRun sandpile_avalanches(std::size_t width, std::size_t height, std::uint64_t grains,
                                std::uint64_t seed, SandpileOptions options) {
  if (grains < 1) throw ConfigError("sandpile_avalanches: need >= 1 grain");
  Sandpile pile(width, height, options.threshold);
  rng::Engine eng(seed);
  const std::uint64_t cells = width * height;
  auto drop_random = [&] {
    const auto cell = rng::below(eng, cells);
    return pile.drop(static_cast<std::size_t>(cell / width), static_cast<std::size_t>(cell % width));
  };
  for (std::uint64_t i = 0; i < options.warmup_grains; ++i) drop_random();
  std::vector<std::uint64_t> sizes;
  sizes.reserve(grains);
  for (std::uint64_t i = 0; i < grains; ++i) sizes.push_back(drop_random());
  return {std::move(sizes), std::move(pile)};
}

std::vector<LogBin> log_binned_histogram(std::span<const std::uint64_t> sizes) {
  std::vector<LogBin> bins;
  std::uint64_t positive = 0;
  for (auto s : sizes) {
    if (s == 0) continue;
    ++positive;
    std::size_t k = 0;
    while ((std::uint64_t{2} << k) <= s) ++k;
    while (bins.size() <= k) {
      const std::uint64_t lo = std::uint64_t{1} << bins.size();
      bins.push_back({lo, lo * 2, 0, 0.0});
    }
    ++bins[k].count;
  }
  for (auto& b : bins) {
    b.density = static_cast<double>(b.count) / static_cast<double>(b.hi - b.lo) /
                static_cast<double>(positive);
  }
  return bins;
}

// ---------------------------------------------------------------------------
// Compression proxies

DescriptionLength description_length_proxy(std::span<const std::uint8_t> data) {
  if (data.empty()) throw ConfigError("description_length_proxy: empty input");
  const auto packed = lz77::compress(data);
  const auto restored = lz77::decompress(packed);
  if (!std::equal(restored.begin(), restored.end(), data.begin(), data.end())) {
    throw InternalError("description_length_proxy: compression round-trip mismatch");
  }
  return {data.size(), packed.size(),
          static_cast<double>(packed.size()) / static_cast<double>(data.size())};
}

std::uint64_t logical_depth_proxy(std::span<const std::uint8_t> data) {
  if (data.empty()) throw ConfigError("logical_depth_proxy: empty input");
  const auto packed = lz77::compress(data);
  lz77::DecodeStats stats;
  const auto restored = lz77::decompress(packed, &stats);
  if (!std::equal(restored.begin(), restored.end(), data.begin(), data.end())) {
    throw InternalError("logical_depth_proxy: compression round-trip mismatch");
  }
  return stats.steps();
}

}  // namespace costplex::measures
