#include "linkage.hpp"

#include "errors.hpp"
#include "hashing.hpp"
#include "modmath.hpp"

namespace rbchain {

namespace {

void push_u32be(std::vector<std::uint8_t>& out, std::size_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::vector<std::uint8_t> encode_link_input(const BigInt& prefix, std::span<const std::uint8_t> content) {
  if (prefix < 0) fail(Errc::invalid_argument, "prefix must be non-negative");
  if (content.size() > kMaxContentBytes) fail(Errc::oversize_content, "content exceeds 2^32-1 bytes");
  auto prefix_bytes = to_bytes_be(prefix);
  if (prefix_bytes.empty()) prefix_bytes.push_back(0x00);
  std::vector<std::uint8_t> out;
  out.reserve(8 + prefix_bytes.size() + content.size());
  push_u32be(out, prefix_bytes.size());
  out.insert(out.end(), prefix_bytes.begin(), prefix_bytes.end());
  push_u32be(out, content.size());
  out.insert(out.end(), content.begin(), content.end());
  return out;
}

BigInt hash_to_exponent(const BigInt& prefix, std::span<const std::uint8_t> content, const PublicParams& pp) {
  auto encoded = encode_link_input(prefix, content);
  auto d = digest(pp.hash_alg, encoded);
  return from_bytes_be(d) % pp.modulus_n;
}

bool suffix_is_valid(const BigInt& x, const BigInt& modulus_n) {
  if (x < 1 || x >= modulus_n) return false;
  if ((x * x) % modulus_n == 1) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), modulus_n.get_mpz_t());
  return g == 1;
}

BigInt link(const BigInt& x, const BigInt& d, const PublicParams& pp) {
  if (!suffix_is_valid(x, pp.modulus_n))
    fail(Errc::invalid_suffix, "suffix violates its invariants for this modulus");
  return mod_exp(x, d * d + 1, pp.modulus_n);
}

BigInt sample_suffix(const PublicParams& pp, DeterministicRng& rng) {
  if (pp.modulus_n < 6) fail(Errc::invalid_modulus, "modulus too small to admit a valid suffix");
  for (;;) {
    BigInt x = rng.below(pp.modulus_n - 1) + 1;  // [1, n-1]
    if (suffix_is_valid(x, pp.modulus_n)) return x;
  }
}

BigInt sample_suffix(const PublicParams& pp, const RngSeed& seed) {
  DeterministicRng rng(seed);
  return sample_suffix(pp, rng);
}

bool verify_link(const BigInt& prefix, std::span<const std::uint8_t> content, int offset,
                 const BigInt& suffix, const BigInt& expected_next_prefix, const PublicParams& pp) {
  if (offset < -kMaxPaddingOffset || offset > kMaxPaddingOffset) return false;
  if (pp.modulus_n < 2 || prefix < 0 || prefix >= pp.modulus_n) return false;
  if (!suffix_is_valid(suffix, pp.modulus_n)) return false;
  BigInt d = hash_to_exponent(prefix, content, pp) + offset;
  if (d < 2) return false;
  return mod_exp(suffix, d * d + 1, pp.modulus_n) == expected_next_prefix;
}

}  // namespace rbchain
