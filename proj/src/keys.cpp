#include "keys.hpp"

#include "errors.hpp"

namespace rbchain {

namespace {

// Attempts to draw a q distinct from p. Only pathological bit sizes (where a
// single safe prime exists) can exhaust this.
constexpr int kDistinctPrimeAttempts = 64;

}  // namespace

KeyPair keygen(unsigned bits_per_prime, const RngSeed& seed, HashAlg alg) {
  if (bits_per_prime < 4) fail(Errc::invalid_argument, "need >= 4 bits per prime");
  DeterministicRng rng(seed);
  BigInt p = gen_safe_prime(bits_per_prime, rng);
  BigInt q;
  for (int attempt = 0;; ++attempt) {
    q = gen_safe_prime(bits_per_prime, rng);
    if (q != p) break;
    if (attempt + 1 >= kDistinctPrimeAttempts)
      fail(Errc::key_search_exhausted,
           "could not find two distinct safe primes of " + std::to_string(bits_per_prime) + " bits");
  }
  KeyPair kp;
  kp.params.modulus_n = p * q;
  kp.params.hash_alg = alg;
  kp.secret = PrivateKey{p, q, (p - 1) * (q - 1)};
  return kp;
}

KeyPair key_pair_from_primes(const BigInt& p, const BigInt& q, HashAlg alg, int rounds) {
  PrivateKey sk{p, q, (p - 1) * (q - 1)};
  validate_private_key(sk, p * q, rounds);
  KeyPair kp;
  kp.params.modulus_n = p * q;
  kp.params.hash_alg = alg;
  kp.secret = sk;
  return kp;
}

void validate_private_key(const PrivateKey& sk, const BigInt& modulus_n, int rounds) {
  if (sk.p == sk.q) fail(Errc::integrity_error, "p and q must differ");
  if (sk.p * sk.q != modulus_n) fail(Errc::integrity_error, "p*q does not match the modulus");
  if (sk.phi != (sk.p - 1) * (sk.q - 1)) fail(Errc::integrity_error, "phi does not match (p-1)(q-1)");
  if (!is_safe_prime(sk.p, rounds)) fail(Errc::integrity_error, "p is not a safe prime");
  if (!is_safe_prime(sk.q, rounds)) fail(Errc::integrity_error, "q is not a safe prime");
}

PaddedExponent pad_exponent(const BigInt& d_raw, const PrivateKey& sk) {
  auto usable = [&](const BigInt& d) {
    if (d < 2) return false;
    BigInt g;
    BigInt e = d * d + 1;
    mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), sk.phi.get_mpz_t());
    return g == 1;
  };
  for (int k = 0; k <= kMaxPaddingOffset; ++k) {
    BigInt plus = d_raw + k;
    if (usable(plus)) return PaddedExponent{d_raw, k, plus};
    if (k > 0) {
      BigInt minus = d_raw - k;
      if (usable(minus)) return PaddedExponent{d_raw, -k, minus};
    }
  }
  fail(Errc::padding_exhausted,
       "no offset within +/-" + std::to_string(kMaxPaddingOffset) + " makes d^2+1 coprime to phi");
}

BigInt redaction_exponent(const PaddedExponent& pe, const PrivateKey& sk) {
  return mod_inverse(pe.d * pe.d + 1, sk.phi);
}

}  // namespace rbchain
