#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bigint.hpp"
#include "keys.hpp"
#include "rng.hpp"

namespace rbchain {

inline constexpr std::size_t kMaxContentBytes = 0xffffffffULL;

/// Canonical byte encoding hashed to derive the link exponent. Length
/// prefixes make the encoding injective; this layout is normative, chains
/// built by other implementations must match it byte for byte:
///
///   u32be(len(prefix_bytes)) || prefix_bytes || u32be(len(content)) || content
///
/// where prefix_bytes is the minimal big-endian form of the prefix, with
/// zero encoded as the single byte 0x00.
std::vector<std::uint8_t> encode_link_input(const BigInt& prefix, std::span<const std::uint8_t> content);

/// d = big-endian integer of hash(encode_link_input(...)) reduced mod n.
/// The digest-to-integer rule (big-endian, then mod n) is a convention of
/// this toolkit; for n > 2^256 the reduction never fires with SHA-256.
BigInt hash_to_exponent(const BigInt& prefix, std::span<const std::uint8_t> content, const PublicParams& pp);

/// Suffix invariants: 1 <= x <= n-1, x^2 != 1 (mod n), gcd(x, n) = 1.
/// Units are required beyond the x^2 check so the redaction identity
/// P^(e*(d^2+1)) = P holds and no factor of n leaks through a block.
bool suffix_is_valid(const BigInt& x, const BigInt& modulus_n);

/// The link function: x^(d^2+1) mod n. Total in d (d=0 gives exponent 1);
/// throws Errc::invalid_suffix if x fails the suffix invariants.
BigInt link(const BigInt& x, const BigInt& d, const PublicParams& pp);

/// Uniform over valid suffixes by rejection; requires n >= 6 so the valid
/// set is nonempty. Deterministic per rng state.
BigInt sample_suffix(const PublicParams& pp, DeterministicRng& rng);
BigInt sample_suffix(const PublicParams& pp, const RngSeed& seed);

/// Public single-link check: with d = hash_to_exponent(prefix, content) +
/// offset, true iff d >= 2, the suffix is valid, and x^(d^2+1) equals the
/// expected next prefix. Never throws; malformed inputs return false.
bool verify_link(const BigInt& prefix, std::span<const std::uint8_t> content, int offset,
                 const BigInt& suffix, const BigInt& expected_next_prefix, const PublicParams& pp);

}  // namespace rbchain
