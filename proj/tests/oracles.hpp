// Reference implementations the library is tested against. Everything here
// is written the slow, obviously-correct way and shares no code with src/.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Schoolbook modular exponentiation: multiply `exp` times.
inline uint64_t naive_mod_exp_u64(uint64_t base, uint64_t exp, uint64_t mod) {
  uint64_t acc = 1 % mod;
  uint64_t b = base % mod;
  for (uint64_t i = 0; i < exp; ++i)
    acc = static_cast<uint64_t>((static_cast<unsigned __int128>(acc) * b) % mod);
  return acc;
}

// Same idea for bignums; exp kept machine-sized on purpose.
inline mpz_class naive_mod_exp_big(const mpz_class& base, uint64_t exp, const mpz_class& mod) {
  mpz_class acc = 1 % mod;
  mpz_class b = base % mod;
  for (uint64_t i = 0; i < exp; ++i) acc = acc * b % mod;
  return acc;
}

inline bool trial_division_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool trial_division_safe_prime(uint64_t n) {
  return trial_division_prime(n) && trial_division_prime((n - 1) / 2);
}

inline std::optional<uint64_t> brute_inverse(uint64_t a, uint64_t m) {
  for (uint64_t e = 1; e < m; ++e)
    if (a % m * e % m == 1) return e;
  return std::nullopt;
}

inline std::vector<uint64_t> roots_of_unity(uint64_t n) {
  std::vector<uint64_t> roots;
  for (uint64_t x = 0; x < n; ++x)
    if (x * x % n == 1) roots.push_back(x);
  return roots;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// The padding search restated over machine words: smallest |offset|,
// positive first, with d >= 2 and gcd(d^2+1, phi) = 1.
inline std::optional<int> gcd_scan_pad(int64_t d_raw, uint64_t phi, int bound) {
  for (int k = 0; k <= bound; ++k) {
    for (int sign : {+1, -1}) {
      if (k == 0 && sign < 0) continue;
      int64_t d = d_raw + sign * k;
      if (d < 2) continue;
      auto du = static_cast<uint64_t>(d);
      if (gcd_u64(du * du + 1, phi) == 1) return sign * k;
    }
  }
  return std::nullopt;
}

inline std::vector<uint64_t> safe_primes_with_bits(unsigned bits) {
  std::vector<uint64_t> out;
  for (uint64_t n = uint64_t(1) << (bits - 1); n < uint64_t(1) << bits; ++n)
    if (trial_division_safe_prime(n)) out.push_back(n);
  return out;
}

}  // namespace oracle
