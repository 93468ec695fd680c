#include "costplex/lz77.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "costplex/errors.hpp"

namespace costplex::lz77 {
namespace {

constexpr std::size_t kHashBits = 16;
constexpr std::uint32_t kNoPos = std::numeric_limits<std::uint32_t>::max();

std::uint32_t hash3(const std::uint8_t* p) {
  const std::uint32_t v = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                          (std::uint32_t{p[2]} << 16);
  return (v * 2654435761u) >> (32 - kHashBits);
}

class TokenWriter {
 public:
  explicit TokenWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void literal(std::uint8_t byte) {
    open_slot(false);
    out_.push_back(byte);
  }

  void match(std::size_t distance, std::size_t length) {
    open_slot(true);
    const std::uint32_t word = static_cast<std::uint32_t>(distance - 1) |
                               (static_cast<std::uint32_t>(length - kMinMatch) << 15);
    out_.push_back(static_cast<std::uint8_t>(word));
    out_.push_back(static_cast<std::uint8_t>(word >> 8));
    out_.push_back(static_cast<std::uint8_t>(word >> 16));
  }

 private:
  void open_slot(bool is_match) {
    if (slot_ == 8) {
      flag_pos_ = out_.size();
      out_.push_back(0);
      slot_ = 0;
    }
    if (is_match) out_[flag_pos_] |= static_cast<std::uint8_t>(1u << slot_);
    ++slot_;
  }

  std::vector<std::uint8_t>& out_;
  std::size_t flag_pos_ = 0;
  int slot_ = 8;
};

}  // namespace

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data) {
  if (data.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("lz77: input larger than 4 GiB");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + data.size() / 2 + 16);
  const auto n = static_cast<std::uint32_t>(data.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));

  std::vector<std::uint32_t> head(std::size_t{1} << kHashBits, kNoPos);
  std::vector<std::uint32_t> prev(data.size(), kNoPos);
  const std::uint8_t* base = data.data();

  auto insert = [&](std::size_t pos) {
    if (pos + kMinMatch > data.size()) return;
    const std::uint32_t h = hash3(base + pos);
    prev[pos] = head[h];
    head[h] = static_cast<std::uint32_t>(pos);
  };

  TokenWriter writer(out);
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t best_len = 0;
    std::size_t best_dist = 0;
    const std::size_t max_len = std::min(kMaxMatch, data.size() - pos);
    if (max_len >= kMinMatch) {
      std::uint32_t cand = head[hash3(base + pos)];
      std::size_t probes = 0;
      while (cand != kNoPos && pos - cand <= kWindow && probes < kMaxChain) {
        ++probes;
        std::size_t len = 0;
        while (len < max_len && base[cand + len] == base[pos + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_dist = pos - cand;
          if (len == max_len) break;
        }
        cand = prev[cand];
      }
    }
    if (best_len >= kMinMatch) {
      writer.match(best_dist, best_len);
      for (std::size_t k = 0; k < best_len; ++k) insert(pos + k);
      pos += best_len;
    } else {
      writer.literal(base[pos]);
      insert(pos);
      ++pos;
    }
  }
  return out;
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> packed, DecodeStats* stats) {
  if (packed.size() < kHeaderSize) throw DomainError("lz77: truncated header");
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= std::uint32_t{packed[i]} << (8 * i);

  DecodeStats local;
  std::vector<std::uint8_t> out;
  out.reserve(n);
  std::size_t in = kHeaderSize;
  while (out.size() < n) {
    if (in >= packed.size()) throw DomainError("lz77: truncated token stream");
    const std::uint8_t flags = packed[in++];
    for (int slot = 0; slot < 8 && out.size() < n; ++slot) {
      if (flags & (1u << slot)) {
        if (in + 3 > packed.size()) throw DomainError("lz77: truncated match token");
        const std::uint32_t word = std::uint32_t{packed[in]} |
                                   (std::uint32_t{packed[in + 1]} << 8) |
                                   (std::uint32_t{packed[in + 2]} << 16);
        in += 3;
        const std::size_t distance = (word & 0x7FFF) + 1;
        const std::size_t length = (word >> 15) + kMinMatch;
        if (distance > out.size() || out.size() + length > n) {
          throw DomainError("lz77: match out of range at output offset " +
                            std::to_string(out.size()));
        }
        const std::size_t from = out.size() - distance;
        for (std::size_t k = 0; k < length; ++k) out.push_back(out[from + k]);
        ++local.matches;
        local.copied_bytes += length;
      } else {
        if (in >= packed.size()) throw DomainError("lz77: truncated literal");
        out.push_back(packed[in++]);
        ++local.literals;
      }
    }
  }
  if (in != packed.size()) throw DomainError("lz77: trailing bytes after stream");
  if (stats) *stats = local;
  return out;
}

}  // namespace costplex::lz77
