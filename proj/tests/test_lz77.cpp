#include <random>
#include <string>
#include <vector>

#include "costplex/errors.hpp"
#include "costplex/lz77.hpp"
#include "doctest.h"

using namespace costplex;

namespace {

// Property corpus: empty-adjacent, short, periodic, random, and mixed inputs,
// including matches that reach back the full window and overlap themselves.
std::vector<std::vector<std::uint8_t>> corpus() {
  std::vector<std::vector<std::uint8_t>> out;
  std::mt19937_64 eng(31337);
  out.push_back({0});
  out.push_back({1, 2});
  out.push_back({7, 7, 7});
  out.push_back(std::vector<std::uint8_t>(100000, 'a'));
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + eng() % 20000;
    std::vector<std::uint8_t> v(n);
    const int kind = trial % 4;
    const std::uint64_t alphabet = 2 + eng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      switch (kind) {
        case 0: v[i] = static_cast<std::uint8_t>(eng()); break;
        case 1: v[i] = static_cast<std::uint8_t>('a' + eng() % alphabet); break;
        case 2: v[i] = static_cast<std::uint8_t>(i % (1 + trial)); break;
        default: v[i] = i > 50 && eng() % 8 ? v[i - 1 - eng() % 50] : static_cast<std::uint8_t>(eng());
      }
    }
    out.push_back(std::move(v));
  }
  // A block repeated beyond the 32 KiB window.
  std::vector<std::uint8_t> far(40000);
  for (auto& b : far) b = static_cast<std::uint8_t>(eng());
  auto twice = far;
  twice.insert(twice.end(), far.begin(), far.end());
  out.push_back(std::move(twice));
  std::vector<std::uint8_t> edge(lz77::kWindow);
  for (auto& b : edge) b = static_cast<std::uint8_t>(eng());
  auto edge2 = edge;
  edge2.insert(edge2.end(), edge.begin(), edge.begin() + 1000);
  out.push_back(std::move(edge2));
  return out;
}

}  // namespace

TEST_CASE("round trip over the property corpus") {
  for (const auto& data : corpus()) {
    const auto packed = lz77::compress(data);
    lz77::DecodeStats stats;
    const auto back = lz77::decompress(packed, &stats);
    REQUIRE(back == data);
    CHECK(stats.literals + stats.copied_bytes == data.size());
  }
}

TEST_CASE("format: header and tokens") {
  const std::vector<std::uint8_t> one{'x'};
  const auto p = lz77::compress(one);
  CHECK(p == std::vector<std::uint8_t>{1, 0, 0, 0, 0x00, 'x'});

  // "abcabcabc": 3 literals then one overlapping match (distance 3, length 6).
  const std::vector<std::uint8_t> abc{'a', 'b', 'c', 'a', 'b', 'c', 'a', 'b', 'c'};
  const auto q = lz77::compress(abc);
  const std::uint32_t word = (3 - 1) | ((6 - 3) << 15);
  CHECK(q == std::vector<std::uint8_t>{9, 0, 0, 0, 0x08, 'a', 'b', 'c',
                                       static_cast<std::uint8_t>(word),
                                       static_cast<std::uint8_t>(word >> 8),
                                       static_cast<std::uint8_t>(word >> 16)});
}

TEST_CASE("empty input") {
  const auto p = lz77::compress({});
  CHECK(p.size() == lz77::kHeaderSize);
  CHECK(lz77::decompress(p).empty());
}

TEST_CASE("malformed streams are rejected") {
  CHECK_THROWS_AS(lz77::decompress(std::vector<std::uint8_t>{1, 0}), DomainError);
  CHECK_THROWS_AS(lz77::decompress(std::vector<std::uint8_t>{1, 0, 0, 0}), DomainError);
  // Match before any output.
  CHECK_THROWS_AS(lz77::decompress(std::vector<std::uint8_t>{3, 0, 0, 0, 0x01, 0, 0, 0}), DomainError);
  // Trailing garbage.
  CHECK_THROWS_AS(lz77::decompress(std::vector<std::uint8_t>{1, 0, 0, 0, 0, 'x', 'y'}), DomainError);
}

TEST_CASE("deterministic output") {
  std::vector<std::uint8_t> data(50000);
  std::mt19937_64 eng(5);
  for (auto& b : data) b = static_cast<std::uint8_t>('a' + eng() % 3);
  CHECK(lz77::compress(data) == lz77::compress(data));
}
