#pragma once

#include <utility>

#include "bigint.hpp"
#include "keys.hpp"
#include "rng.hpp"

namespace rbchain {

/// Two suffix/exponent pairs with x^d == x_alt^d_alt (mod n) and
/// gcd(d, d_alt) = 1. Such a pair is what an attacker on the weakened
/// scheme (link exponent d instead of d^2+1) would observe after a
/// legitimate redaction.
struct WeakCollision {
  BigInt x;
  BigInt d;
  BigInt x_alt;
  BigInt d_alt;
  BigInt n;
};

/// Builds a collision fixture with the trapdoor (finding one without it is
/// the hard problem). Both exponents are sampled coprime to phi and to each
/// other; deterministic per seed.
WeakCollision make_weak_collision(const PrivateKey& sk, const PublicParams& pp, DeterministicRng& rng);
WeakCollision make_weak_collision(const PrivateKey& sk, const PublicParams& pp, const RngSeed& seed);

/// The corruption attack on the weakened scheme. Combines the collision via
/// Bezout coefficients d*a + d_alt*b = 1 into a fresh pair (x_forged,
/// d_forged = d*d_alt) with x_forged^d_forged == x^d (mod n). Consumes only
/// public values. Throws Errc::invalid_argument when gcd(d, d_alt) != 1.
std::pair<BigInt, BigInt> two_step_forge(const WeakCollision& wc);

/// True iff the forgery that defeats the weak check fails the real one,
/// i.e. x_forged^(d_forged^2+1) != x^(d^2+1) (mod n).
bool strong_scheme_resists(const WeakCollision& wc);

}  // namespace rbchain
