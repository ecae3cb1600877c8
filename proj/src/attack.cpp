#include "attack.hpp"

#include "errors.hpp"
#include "modmath.hpp"

namespace rbchain {

namespace {

// Random exponent in [2, n-2] coprime to phi.
BigInt sample_coprime(const BigInt& n, const BigInt& phi, DeterministicRng& rng) {
  for (;;) {
    BigInt c = 2 + rng.below(n - 3);
    if (gcd(c, phi) == 1) return c;
  }
}

}  // namespace

WeakCollision make_weak_collision(const PrivateKey& sk, const PublicParams& pp, DeterministicRng& rng) {
  const BigInt& n = pp.modulus_n;
  if (n < 6) fail(Errc::invalid_modulus, "modulus too small for collision sampling");

  BigInt d = sample_coprime(n, sk.phi, rng);
  BigInt d_alt;
  do {
    d_alt = sample_coprime(n, sk.phi, rng);
  } while (gcd(d, d_alt) != 1);

  // y = common link value; x = y^(1/d), x_alt = y^(1/d_alt).
  BigInt y;
  do {
    y = 2 + rng.below(n - 3);
  } while (gcd(y, n) != 1);

  BigInt x = mod_exp(y, mod_inverse(d, sk.phi), n);
  BigInt x_alt = mod_exp(y, mod_inverse(d_alt, sk.phi), n);
  return WeakCollision{x, d, x_alt, d_alt, n};
}

WeakCollision make_weak_collision(const PrivateKey& sk, const PublicParams& pp, const RngSeed& seed) {
  DeterministicRng rng(seed);
  return make_weak_collision(sk, pp, rng);
}

std::pair<BigInt, BigInt> two_step_forge(const WeakCollision& wc) {
  ExtGcd e = ext_gcd(wc.d, wc.d_alt);
  if (e.g != 1) fail(Errc::invalid_argument, "collision exponents are not coprime");

  // x_alt^a * x^b with negative exponents routed through the inverse base.
  auto power = [&](const BigInt& base, const BigInt& exp) {
    if (exp >= 0) return mod_exp(base, exp, wc.n);
    return mod_exp(mod_inverse(base, wc.n), -exp, wc.n);
  };
  BigInt x_forged = power(wc.x_alt, e.x) * power(wc.x, e.y) % wc.n;
  BigInt d_forged = wc.d * wc.d_alt;
  return {x_forged, d_forged};
}

bool strong_scheme_resists(const WeakCollision& wc) {
  auto [x_forged, d_forged] = two_step_forge(wc);
  BigInt lhs = mod_exp(x_forged, d_forged * d_forged + 1, wc.n);
  BigInt rhs = mod_exp(wc.x, wc.d * wc.d + 1, wc.n);
  return lhs != rhs;
}

}  // namespace rbchain
