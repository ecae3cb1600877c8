#pragma once

#include "bigint.hpp"
#include "rng.hpp"

namespace rbchain {

inline constexpr int kDefaultMillerRabinRounds = 64;

/// base^exponent mod modulus. Throws Errc::invalid_modulus if modulus < 2.
BigInt mod_exp(const BigInt& base, const BigInt& exponent, const BigInt& modulus);

struct ExtGcd {
  BigInt g;  // gcd(a, b), always >= 1 for valid input
  BigInt x;  // signed Bezout coefficients: a*x + b*y == g
  BigInt y;
};

/// Extended Euclid. Throws Errc::undefined_gcd when a == b == 0.
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

/// e with a*e == 1 (mod m), 0 < e < m. Throws Errc::not_invertible when
/// gcd(a, m) != 1 and Errc::invalid_modulus when m < 2.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// Miller-Rabin with deterministic, candidate-derived bases. A false result
/// is certain; a true result is wrong with probability <= 4^(-rounds).
bool is_probable_prime(const BigInt& candidate, int rounds = kDefaultMillerRabinRounds);

/// True iff candidate and (candidate-1)/2 are both probable primes.
bool is_safe_prime(const BigInt& candidate, int rounds = kDefaultMillerRabinRounds);

/// Safe prime with exactly `bits` significant bits (bits >= 4); deterministic
/// per seed. The search samples an odd candidate, steps by 2 under a small-
/// prime sieve on both the candidate and (candidate-1)/2, and resamples
/// periodically.
BigInt gen_safe_prime(unsigned bits, DeterministicRng& rng, int rounds = kDefaultMillerRabinRounds);
BigInt gen_safe_prime(unsigned bits, const RngSeed& seed, int rounds = kDefaultMillerRabinRounds);

}  // namespace rbchain
