#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "bigint.hpp"

namespace rbchain {

inline constexpr std::size_t kSeedBytes = 32;

/// Seed for the deterministic generator. Identical seeds always yield
/// identical streams, on every platform.
using RngSeed = std::array<std::uint8_t, kSeedBytes>;

/// Fresh seed from system entropy.
RngSeed random_seed();

/// Parses up to 64 hex digits into a seed; shorter input is left-padded
/// with zeros. Throws Errc::parse_error on bad input.
RngSeed seed_from_hex(const std::string& hex);

std::string seed_to_hex(const RngSeed& seed);

/// Deterministic byte stream: block i is SHA-256(seed || big-endian i).
/// Not a production CSPRNG; reproducibility is the design goal here.
class DeterministicRng {
public:
  explicit DeterministicRng(const RngSeed& seed);

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();

  /// Uniform in [0, bound) by rejection sampling; bound must be >= 1.
  BigInt below(const BigInt& bound);

  /// Uniform with exactly `bits` significant bits (top bit set); bits >= 1.
  BigInt exact_bits(unsigned bits);

private:
  void refill();

  RngSeed seed_;
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t used_ = 32;  // force refill on first use
};

}  // namespace rbchain
