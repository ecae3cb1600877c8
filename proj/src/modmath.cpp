#include "modmath.hpp"

#include <array>
#include <vector>

#include "errors.hpp"
#include "hashing.hpp"

namespace rbchain {

BigInt mod_exp(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus < 2) fail(Errc::invalid_modulus, "modulus must be >= 2");
  if (base < 0 || exponent < 0) fail(Errc::invalid_argument, "base and exponent must be non-negative");
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
  if (a == 0 && b == 0) fail(Errc::undefined_gcd, "gcd(0, 0) is undefined");
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m < 2) fail(Errc::invalid_modulus, "modulus must be >= 2");
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(Errc::not_invertible, to_hex(a) + " has no inverse modulo " + to_hex(m));
  return out;
}

namespace {

// Odd primes below 8192, for trial division and the candidate sieve.
const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> table = [] {
    constexpr unsigned limit = 8192;
    std::vector<bool> composite(limit, false);
    std::vector<unsigned long> primes;
    for (unsigned n = 3; n < limit; n += 2) {
      if (composite[n]) continue;
      primes.push_back(n);
      for (unsigned m = n * n; m < limit; m += 2 * n) composite[m] = true;
    }
    return primes;
  }();
  return table;
}

// Base stream for Miller-Rabin, derived from the candidate so the test is a
// pure function of its inputs.
DeterministicRng base_rng(const BigInt& candidate) {
  static const char tag[] = "rbchain.miller-rabin.v1";
  std::vector<std::uint8_t> input(tag, tag + sizeof(tag) - 1);
  auto bytes = to_bytes_be(candidate);
  input.insert(input.end(), bytes.begin(), bytes.end());
  auto d = digest(HashAlg::sha256, input);
  RngSeed seed{};
  std::copy(d.begin(), d.end(), seed.begin());
  return DeterministicRng(seed);
}

bool miller_rabin(const BigInt& n, int rounds) {
  // n odd, >= 5, with no factor in the small-prime table.
  BigInt n_minus_1 = n - 1;
  BigInt t = n_minus_1;
  unsigned long s = mpz_scan1(t.get_mpz_t(), 0);
  t >>= s;

  auto rng = base_rng(n);
  BigInt base_range = n - 3;  // bases in [2, n-2]
  for (int round = 0; round < rounds; ++round) {
    BigInt a = rng.below(base_range) + 2;
    BigInt x = mod_exp(a, t, n);
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

bool is_probable_prime(const BigInt& candidate, int rounds) {
  if (rounds < 1) fail(Errc::invalid_argument, "rounds must be >= 1");
  if (candidate < 2) return false;
  if (candidate == 2) return true;
  if (mpz_even_p(candidate.get_mpz_t())) return false;
  for (unsigned long p : small_primes()) {
    if (candidate == p) return true;
    if (mpz_divisible_ui_p(candidate.get_mpz_t(), p)) return false;
  }
  if (candidate < static_cast<unsigned long>(8192) * 8192) return true;  // fully sieved
  return miller_rabin(candidate, rounds);
}

bool is_safe_prime(const BigInt& candidate, int rounds) {
  if (!is_probable_prime(candidate, rounds)) return false;
  BigInt r = (candidate - 1) / 2;
  return is_probable_prime(r, rounds);
}

namespace {

constexpr unsigned long kResampleInterval = 4096;

}  // namespace

BigInt gen_safe_prime(unsigned bits, DeterministicRng& rng, int rounds) {
  if (bits < 4) fail(Errc::invalid_argument, "safe prime needs >= 4 bits");
  const auto& primes = small_primes();
  const BigInt upper = BigInt(1) << bits;

  for (;;) {
    BigInt c = rng.exact_bits(bits) | 1;
    BigInt r = (c - 1) >> 1;

    // Track c and r mod each small prime incrementally while stepping c += 2.
    std::vector<unsigned long> res_c(primes.size()), res_r(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
      res_c[i] = mpz_fdiv_ui(c.get_mpz_t(), primes[i]);
      res_r[i] = mpz_fdiv_ui(r.get_mpz_t(), primes[i]);
    }

    for (unsigned long step = 0; step < kResampleInterval && c < upper; ++step) {
      bool sieved_out = mpz_even_p(r.get_mpz_t());  // r must be odd (c == 3 mod 4)
      if (!sieved_out) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
          if ((res_c[i] == 0 && c != primes[i]) || (res_r[i] == 0 && r != primes[i])) {
            sieved_out = true;
            break;
          }
        }
      }
      if (!sieved_out && is_probable_prime(r, 2) && is_probable_prime(c, 2) &&
          is_probable_prime(r, rounds) && is_probable_prime(c, rounds)) {
        return c;
      }
      c += 2;
      r += 1;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        res_c[i] += 2;
        if (res_c[i] >= primes[i]) res_c[i] -= primes[i];
        res_r[i] += 1;
        if (res_r[i] >= primes[i]) res_r[i] -= primes[i];
      }
    }
  }
}

BigInt gen_safe_prime(unsigned bits, const RngSeed& seed, int rounds) {
  DeterministicRng rng(seed);
  return gen_safe_prime(bits, rng, rounds);
}

}  // namespace rbchain
