#include "rng.hpp"

#include <algorithm>
#include <random>

#include "errors.hpp"
#include "hashing.hpp"

namespace rbchain {

RngSeed random_seed() {
  std::random_device rd;
  RngSeed seed{};
  for (std::size_t i = 0; i < seed.size(); i += 4) {
    std::uint32_t w = rd();
    for (std::size_t j = 0; j < 4; ++j) seed[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
  }
  return seed;
}

namespace {

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

RngSeed seed_from_hex(const std::string& hex) {
  if (hex.empty() || hex.size() > 2 * kSeedBytes)
    fail(Errc::parse_error, "seed must be 1..64 hex digits");
  RngSeed seed{};
  // Right-align the digits so "ff" and "00ff" mean the same seed.
  std::size_t nibbles = hex.size();
  for (std::size_t i = 0; i < nibbles; ++i) {
    int v = hex_nibble(hex[nibbles - 1 - i]);
    if (v < 0) fail(Errc::parse_error, "invalid hex digit in seed");
    std::size_t byte = kSeedBytes - 1 - i / 2;
    seed[byte] |= static_cast<std::uint8_t>(v << (4 * (i % 2)));
  }
  return seed;
}

std::string seed_to_hex(const RngSeed& seed) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * seed.size());
  for (std::uint8_t b : seed) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

DeterministicRng::DeterministicRng(const RngSeed& seed) : seed_(seed) {}

void DeterministicRng::refill() {
  std::array<std::uint8_t, kSeedBytes + 8> input{};
  std::copy(seed_.begin(), seed_.end(), input.begin());
  for (int i = 0; i < 8; ++i)
    input[kSeedBytes + i] = static_cast<std::uint8_t>(counter_ >> (8 * (7 - i)));
  auto d = digest(HashAlg::sha256, input);
  std::copy(d.begin(), d.end(), block_.begin());
  ++counter_;
  used_ = 0;
}

void DeterministicRng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n, out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += n;
    pos += n;
  }
}

std::uint64_t DeterministicRng::next_u64() {
  std::array<std::uint8_t, 8> buf{};
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = (v << 8) | b;
  return v;
}

BigInt DeterministicRng::below(const BigInt& bound) {
  if (bound < 1) fail(Errc::invalid_argument, "rng bound must be >= 1");
  if (bound == 1) return 0;
  std::size_t bits = bit_length(bound);
  std::size_t nbytes = (bits + 7) / 8;
  unsigned top_mask = (bits % 8 == 0) ? 0xff : ((1u << (bits % 8)) - 1);
  std::vector<std::uint8_t> buf(nbytes);
  for (;;) {
    fill(buf);
    buf[0] &= static_cast<std::uint8_t>(top_mask);
    BigInt v = from_bytes_be(buf);
    if (v < bound) return v;
  }
}

BigInt DeterministicRng::exact_bits(unsigned bits) {
  if (bits == 0) fail(Errc::invalid_argument, "bit count must be >= 1");
  if (bits == 1) return 1;
  BigInt v = below(BigInt(1) << (bits - 1));
  return v + (BigInt(1) << (bits - 1));
}

}  // namespace rbchain
