#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "modmath.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace rbchain;

TEST_CASE("mod_exp basics") {
  CHECK(mod_exp(3, 17, 35) == 33);  // 33 from the repeated-multiplication oracle
  CHECK(mod_exp(3, 17, 35) == oracle::naive_mod_exp_u64(3, 17, 35));

  DeterministicRng rng(seed_from_hex("01"));
  for (int i = 0; i < 20; ++i) {
    BigInt x = rng.below(1000000);
    BigInt n = rng.below(1000000) + 2;
    CHECK(mod_exp(x, 0, n) == 1);
    CHECK(mod_exp(1, x, n) == 1 % n);
  }

  CHECK_THROWS_AS(mod_exp(3, 4, 1), Error);
  CHECK_THROWS_AS(mod_exp(3, 4, 0), Error);
  try {
    mod_exp(2, 2, 1);
    FAIL("expected invalid_modulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_modulus);
  }
}

TEST_CASE("mod_exp agrees with the naive oracle") {
  DeterministicRng rng(seed_from_hex("02"));
  for (int i = 0; i < 500; ++i) {
    auto base = rng.next_u64() % (1u << 16);
    auto exp = rng.next_u64() % (1u << 12);
    auto mod = rng.next_u64() % (1u << 16) + 2;
    CAPTURE(base);
    CAPTURE(exp);
    CAPTURE(mod);
    CHECK(mod_exp(base, exp, mod) == oracle::naive_mod_exp_u64(base, exp, mod));
  }
  // Bignum side: 256-bit moduli, machine-sized exponents.
  for (int i = 0; i < 40; ++i) {
    BigInt mod = rng.exact_bits(256) | 1;
    BigInt base = rng.below(mod);
    auto exp = rng.next_u64() % (1u << 16);
    CHECK(mod_exp(base, exp, mod) == oracle::naive_mod_exp_big(base, exp, mod));
  }
}

TEST_CASE("ext_gcd") {
  ExtGcd r = ext_gcd(3, 5);
  CHECK(r.g == 1);
  CHECK(r.x == 2);
  CHECK(r.y == -1);

  r = ext_gcd(1, 7);
  CHECK(r.g == 1);
  CHECK(r.x == 1);
  CHECK(r.y == 0);

  r = ext_gcd(4, 6);
  CHECK(r.g == 2);
  CHECK(4 * r.x + 6 * r.y == 2);

  DeterministicRng rng(seed_from_hex("03"));
  for (int i = 0; i < 200; ++i) {
    BigInt a = rng.below(BigInt(1) << 128);
    BigInt b = rng.below(BigInt(1) << 128);
    if (a == 0 && b == 0) continue;
    ExtGcd e = ext_gcd(a, b);
    CHECK(a * e.x + b * e.y == e.g);
    CHECK(e.g == gcd(a, b));
  }

  CHECK_THROWS_AS(ext_gcd(0, 0), Error);
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(17, 60) == 53);  // brute-force scan oracle
  CHECK(*oracle::brute_inverse(17, 60) == 53);
  CHECK(mod_inverse(1, 60) == 1);
  CHECK_THROWS_AS(mod_inverse(10, 60), Error);
  try {
    mod_inverse(10, 60);
    FAIL("expected not_invertible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_invertible);
  }

  DeterministicRng rng(seed_from_hex("04"));
  int checked = 0;
  while (checked < 100) {
    uint64_t m = rng.next_u64() % 5000 + 2;
    uint64_t a = rng.next_u64() % m;
    auto expect = oracle::brute_inverse(a, m);
    if (!expect) continue;
    BigInt e = mod_inverse(a, m);
    CHECK(e == *expect);
    CHECK(BigInt(a) * e % m == 1);
    ++checked;
  }
}

TEST_CASE("is_probable_prime") {
  CHECK(is_probable_prime(7, 64));
  CHECK_FALSE(is_probable_prime(1, 64));
  CHECK_FALSE(is_probable_prime(0, 64));
  CHECK(is_probable_prime(2, 64));
  CHECK_FALSE(is_probable_prime(561, 64));  // Carmichael; trial division says composite

  for (uint64_t n = 0; n < 10000; ++n)
    CHECK(is_probable_prime(n, 8) == oracle::trial_division_prime(n));

  // Above the sieve's fully-checked range the Miller-Rabin path runs.
  for (uint64_t n = 67108859; n < 67109000; ++n)
    CHECK(is_probable_prime(n, 16) == oracle::trial_division_prime(n));

  CHECK(is_probable_prime(BigInt("170141183460469231731687303715884105727"), 64));  // 2^127-1
  CHECK_THROWS_AS(is_probable_prime(7, 0), Error);
}

TEST_CASE("is_safe_prime") {
  CHECK(is_safe_prime(7, 64));   // r = 3
  CHECK(is_safe_prime(11, 64));  // r = 5
  CHECK_FALSE(is_safe_prime(13, 64));  // r = 6

  for (uint64_t n = 3; n < 5000; n += 2)
    CHECK(is_safe_prime(n, 8) == oracle::trial_division_safe_prime(n));
}

TEST_CASE("gen_safe_prime") {
  auto seed = seed_from_hex("05");
  CHECK(gen_safe_prime(4, seed) == 11);  // the only 4-bit safe prime
  CHECK(gen_safe_prime(5, seed) == 23);  // the only 5-bit safe prime

  auto six_bit = oracle::safe_primes_with_bits(6);
  BigInt got = gen_safe_prime(6, seed);
  CHECK(std::count(six_bit.begin(), six_bit.end(), got.get_ui()) == 1);

  CHECK(gen_safe_prime(16, seed) == gen_safe_prime(16, seed));

  DeterministicRng rng(seed_from_hex("06"));
  for (unsigned bits : {12u, 16u, 24u, 48u}) {
    BigInt p = gen_safe_prime(bits, rng);
    CHECK(bit_length(p) == bits);
    CHECK(is_safe_prime(p, 64));
  }

  CHECK_THROWS_AS(gen_safe_prime(3, seed), Error);
}

TEST_CASE("Fermat consistency on a toy modulus") {
  BigInt p = 7, q = 11, n = 77, phi = 60;
  DeterministicRng rng(seed_from_hex("07"));
  for (int i = 0; i < 100; ++i) {
    BigInt a = rng.below(n - 1) + 1;
    if (gcd(a, n) != 1) continue;
    CHECK(mod_exp(a, phi, n) == 1);
  }
  CHECK(p * q == n);
}
