#pragma once

#include "bigint.hpp"
#include "hashing.hpp"
#include "modmath.hpp"
#include "rng.hpp"

namespace rbchain {

/// Everything a verifier needs: the modulus, the hash choice, and (once a
/// chain is initialized) the genesis prefix.
struct PublicParams {
  BigInt modulus_n;
  HashAlg hash_alg = HashAlg::sha256;
  BigInt genesis_prefix = 0;  // 0 until bound to a chain id; see ledger::init_chain
};

/// The redaction trapdoor: the factorization of n and phi(n).
struct PrivateKey {
  BigInt p;
  BigInt q;
  BigInt phi;  // (p-1)(q-1)
};

struct KeyPair {
  PublicParams params;
  PrivateKey secret;
};

/// Generates two distinct safe primes of `bits_per_prime` bits each;
/// deterministic per seed.
KeyPair keygen(unsigned bits_per_prime, const RngSeed& seed, HashAlg alg = HashAlg::sha256);

/// Builds a key pair from explicit primes, validating both are safe primes.
KeyPair key_pair_from_primes(const BigInt& p, const BigInt& q, HashAlg alg = HashAlg::sha256,
                             int rounds = kDefaultMillerRabinRounds);

/// Checks p*q == modulus and both factors are safe primes; throws
/// Errc::integrity_error otherwise.
void validate_private_key(const PrivateKey& sk, const BigInt& modulus_n,
                          int rounds = kDefaultMillerRabinRounds);

/// Hard bound on the padding search. Exceeding it at realistic key sizes
/// would require d^2+1 to share a factor with phi for 129 consecutive
/// exponents; the bound turns that into a testable error path.
inline constexpr int kMaxPaddingOffset = 64;

/// A hash-derived exponent with the public padding offset applied.
struct PaddedExponent {
  BigInt d_raw;
  int offset = 0;
  BigInt d;  // d_raw + offset, >= 2
};

/// Smallest-|offset| adjustment (0, +1, -1, +2, ...) making gcd(d^2+1, phi)
/// = 1 with d >= 2. Throws Errc::padding_exhausted past kMaxPaddingOffset.
PaddedExponent pad_exponent(const BigInt& d_raw, const PrivateKey& sk);

/// The trapdoor inverse: e with e*(d^2+1) == 1 (mod phi).
BigInt redaction_exponent(const PaddedExponent& pe, const PrivateKey& sk);

}  // namespace rbchain
