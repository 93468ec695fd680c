#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Self-contained LZ77 codec with a fixed, platform-independent format:
//
//   header   4 bytes  original length, little endian
//   groups   1 flag byte + up to 8 tokens; flag bit i (LSB first) set means
//            token i is a match, clear means a literal
//   literal  1 byte
//   match    3 bytes  little endian 24-bit word:
//                     bits 0..14  distance - 1   (distance 1..32768)
//                     bits 15..23 length - 3     (length 3..514)
//
// The encoder is greedy: at each position it takes the longest match in the
// 32 KiB window (nearest on ties, hash chains capped at kMaxChain probes),
// falling back to a literal when nothing of length >= 3 is found.
namespace costplex::lz77 {

inline constexpr std::size_t kWindow = 32768;
inline constexpr std::size_t kMinMatch = 3;
inline constexpr std::size_t kMaxMatch = 514;
inline constexpr std::size_t kMaxChain = 4096;
inline constexpr std::size_t kHeaderSize = 4;

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data);

struct DecodeStats {
  std::uint64_t literals = 0;
  std::uint64_t matches = 0;
  std::uint64_t copied_bytes = 0;

  std::uint64_t steps() const { return literals + matches + copied_bytes; }
};

// Throws DomainError on a malformed stream.
std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> packed,
                                     DecodeStats* stats = nullptr);

}  // namespace costplex::lz77
