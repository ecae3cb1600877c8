#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rbchain {

/// Arbitrary-precision integer. Chain values (moduli, prefixes, suffixes,
/// exponents) are non-negative; signed values appear only as Bezout
/// coefficients and padding offsets.
using BigInt = mpz_class;

/// Lowercase minimal hex, "0" for zero.
std::string to_hex(const BigInt& v);

/// Inverse of to_hex. Accepts any hex digits; throws Errc::parse_error on
/// empty or non-hex input.
BigInt from_hex(const std::string& hex);

/// True iff `hex` is exactly what to_hex produces: lowercase, no leading
/// zeros, "0" for zero.
bool is_canonical_hex(const std::string& hex);

/// Minimal big-endian bytes; empty for zero.
std::vector<std::uint8_t> to_bytes_be(const BigInt& v);

BigInt from_bytes_be(std::span<const std::uint8_t> bytes);

/// Number of significant bits; 0 for zero.
std::size_t bit_length(const BigInt& v);

}  // namespace rbchain
