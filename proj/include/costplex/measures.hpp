#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Classical complexity quantifiers: entropy, box-counting dimension,
// lacunarity, largest Lyapunov exponent, sandpile avalanches, and the
// compression-based description-length / logical-depth proxies.
namespace costplex::measures {

// ---------------------------------------------------------------------------
// Entropy

class SymbolDistribution {
 public:
  SymbolDistribution() = default;
  explicit SymbolDistribution(std::map<std::string, std::uint64_t> counts);

  void add(const std::string& symbol, std::uint64_t count = 1);

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  std::size_t symbol_count() const;  // symbols with non-zero count

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Whitespace-delimited tokens; `lowercase` folds ASCII letters.
SymbolDistribution tokenize(std::istream& in, bool lowercase = false);

// Shannon entropy in bits. Throws DomainError when total() == 0.
double shannon_entropy(const SymbolDistribution& dist);
double shannon_entropy(std::span<const std::uint64_t> counts);

// ---------------------------------------------------------------------------
// Binary rasters

class BinaryGrid2D {
 public:
  BinaryGrid2D(std::size_t width, std::size_t height);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  bool at(std::size_t row, std::size_t col) const { return cells_[row * width_ + col] != 0; }
  void set(std::size_t row, std::size_t col, bool value = true) {
    cells_[row * width_ + col] = value ? 1 : 0;
  }
  std::size_t occupied() const;

  // Plain PBM: "P1", width, height, then width*height 0/1 cells row-major.
  // '#' starts a comment running to end of line.
  static BinaryGrid2D read_pbm(std::istream& in);
  void write_pbm(std::ostream& out) const;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> cells_;
};

// Koch curve of the given depth on a square grid of side 3^grid_exponent
// (grid_exponent defaults to depth). The polyline spans the full width along
// the bottom third and is rasterized with Bresenham segments.
BinaryGrid2D koch_raster(int depth, int grid_exponent = -1);

// Single horizontal line through the middle row.
BinaryGrid2D line_raster(std::size_t side);

// ---------------------------------------------------------------------------
// Box counting and lacunarity

struct BoxCount {
  std::size_t box_size;
  std::size_t occupied_boxes;
};

struct BoxCountingResult {
  double dimension;
  std::vector<BoxCount> counts;  // ascending box size
};

// Needs >= 3 distinct sizes, each <= min(width, height). Boxes are anchored at
// the origin and partial edge boxes count when they hold an occupied cell.
BoxCountingResult box_counting_dimension(const BinaryGrid2D& grid,
                                         std::span<const std::size_t> box_sizes);

// Gliding-box lacunarity E[m^2] / E[m]^2 over every s x s window (stride 1).
std::vector<double> lacunarity(const BinaryGrid2D& grid, std::span<const std::size_t> box_sizes);

// ---------------------------------------------------------------------------
// Lyapunov exponent

struct TrajectoryPair {
  std::vector<std::vector<double>> series_a;
  std::vector<std::vector<double>> series_b;
  double dt = 1.0;
  // Renormalized pairs: per-step ln(|D| / delta0) measured before the
  // partner is pulled back to distance delta0. Empty for raw pairs.
  std::vector<double> step_log_growth;

  bool renormalized() const { return !step_log_growth.empty(); }
  // Sum of step_log_growth divided by the number of steps.
  double mean_log_growth() const;
};

enum class MapId { logistic };

// Two trajectories of the chosen map started delta0 apart. Steps counts map
// applications, so each series holds steps + 1 states.
TrajectoryPair iterate_map_pair(MapId map, double param, double x0, double delta0,
                                std::size_t steps, bool renormalize);

struct LyapunovWindow {
  std::size_t begin = 0;          // first retained time index
  std::size_t end = SIZE_MAX;     // one past last retained index (clamped)
};

// Slope of ln|D(t)| vs t. For renormalized pairs ln|D(t)| is the accumulated
// log-growth. Throws DomainError on a zero separation in the window.
double largest_lyapunov(const TrajectoryPair& pair, LyapunovWindow window = {});

// ---------------------------------------------------------------------------
// Abelian sandpile

enum class ToppleOrder { stack, queue };

class Sandpile {
 public:
  Sandpile(std::size_t width, std::size_t height, int threshold = 4);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  int threshold() const { return threshold_; }
  int height_at(std::size_t row, std::size_t col) const { return heights_[row * width_ + col]; }
  const std::vector<int>& heights() const { return heights_; }

  // Adds grains without relaxing.
  void add(std::size_t row, std::size_t col, int grains = 1);
  // Topples until stable; returns the number of topple events.
  std::uint64_t relax(ToppleOrder order = ToppleOrder::stack);
  // add + relax.
  std::uint64_t drop(std::size_t row, std::size_t col, ToppleOrder order = ToppleOrder::stack);

  bool stable() const;
  std::int64_t total_height() const;
  std::uint64_t grains_added() const { return added_; }
  std::uint64_t grains_lost() const { return lost_; }

 private:
  std::size_t width_;
  std::size_t height_;
  int threshold_;
  std::vector<int> heights_;
  std::uint64_t added_ = 0;
  std::uint64_t lost_ = 0;
};

struct SandpileOptions {
  std::uint64_t warmup_grains = 0;  // dropped first, avalanches not recorded
  int threshold = 4;
};

struct SandpileRun {
  std::vector<std::uint64_t> avalanche_sizes;  // one per recorded grain
  Sandpile final_state;
};

SandpileRun sandpile_avalanches(std::size_t width, std::size_t height, std::uint64_t grains,
                                std::uint64_t seed, SandpileOptions options = {});

struct LogBin {
  std::uint64_t lo;  // inclusive
  std::uint64_t hi;  // exclusive
  std::uint64_t count;
  double density;  // count / (hi - lo) / number of positive sizes
};

// Bins [1, 2), [2, 4), ... covering every positive size; zeros are skipped.
std::vector<LogBin> log_binned_histogram(std::span<const std::uint64_t> sizes);

// ---------------------------------------------------------------------------
// Compression proxies

struct DescriptionLength {
  std::size_t original_length;
  std::size_t compressed_length;
  double ratio;
};

// Compressed size with the built-in LZ77 codec. The round trip is verified;
// a mismatch throws InternalError.
DescriptionLength description_length_proxy(std::span<const std::uint8_t> data);

// Decoder primitive operations (tokens decoded plus bytes copied by matches)
// needed to regenerate the data from its compressed form.
std::uint64_t logical_depth_proxy(std::span<const std::uint8_t> data);

}  // namespace costplex::measures
