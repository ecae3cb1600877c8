// Acceptance gate. Runs the nine release criteria and prints one pass/fail
// line each; exits nonzero if any fail.
//
//   acceptance [--cli <path-to-rbchain-binary>] [--with-2048]
//
// --with-2048 adds the long 2048-bit keygen smoke, which is excluded from
// the default suite. Criterion 9 needs the CLI path (or RBCHAIN_CLI).

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "attack.hpp"
#include "chain_io.hpp"
#include "errors.hpp"
#include "keys.hpp"
#include "ledger.hpp"
#include "linkage.hpp"
#include "modmath.hpp"
#include "oracles.hpp"
#include "rng.hpp"

namespace {

using namespace rbchain;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// All 23 safe primes with exactly 12 bits.
constexpr std::array<unsigned, 23> kToyPrimes = {
    2063, 2099, 2207, 2447, 2459, 2579, 2819, 2879, 2903, 2963, 2999, 3023,
    3119, 3167, 3203, 3467, 3623, 3779, 3803, 3863, 3947, 4007, 4079};

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome ok(const std::string& detail) { return {true, detail}; }
Outcome bad(const std::string& detail) { return {false, detail}; }

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> random_content(DeterministicRng& rng) {
  std::vector<std::uint8_t> out(1 + static_cast<std::size_t>(rng.next_u64() % 24));
  rng.fill(out);
  return out;
}

// Content hashing to d < 2 is rejected at append; resample until it is not.
void append_random(ChainGraph& cg, std::optional<std::size_t> parent, DeterministicRng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto content = random_content(rng);
    try {
      append(cg, parent, content, rng);
      return;
    } catch (const Error& e) {
      if (e.code() != Errc::exponent_too_small) throw;
    }
  }
  fail(Errc::exponent_too_small, "no appendable content found in 64 draws");
}

// Random non-leaf position; walks forward past unredactable ones.
std::size_t redact_random(ChainGraph& cg, const PrivateKey& sk, DeterministicRng& rng) {
  std::size_t interior = cg.blocks.size() - 1;
  std::size_t start = static_cast<std::size_t>(rng.next_u64() % interior);
  auto content = random_content(rng);
  for (std::size_t step = 0; step < interior; ++step) {
    std::size_t pos = (start + step) % interior;
    try {
      redact(cg, sk, pos, content);
      return pos;
    } catch (const Error& e) {
      if (e.code() != Errc::unredactable_position) throw;
    }
  }
  fail(Errc::unredactable_position, "every interior position rejected the redaction");
}

// Empty when `after` differs from `before` only inside block `pos`'s
// content/suffix/offset; otherwise a description of the leak.
std::string locality_problem(const json& before, const json& after, std::size_t pos) {
  if (before.at("format_version") != after.at("format_version")) return "format_version changed";
  if (before.at("header") != after.at("header")) return "header changed";
  const json& a = before.at("blocks");
  const json& b = after.at("blocks");
  if (a.size() != b.size()) return "block count changed";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == pos) {
      for (const char* field : {"kind", "parent", "prefix"})
        if (a[i].at(field) != b[i].at(field))
          return std::string(field) + " changed on the redacted block";
      continue;
    }
    if (a[i] != b[i]) return "block " + std::to_string(i) + " changed";
  }
  return "";
}

// Fixtures built by criterion 1, reused by criterion 2.
struct Fixtures {
  std::vector<KeyPair> keys;
  std::vector<ChainGraph> chains;
};

Outcome criterion1(Fixtures& fx) {
  DeterministicRng rng(seed_from_hex("ac01"));
  int redactions = 0;
  for (int c = 0; c < 50; ++c) {
    std::size_t pi = rng.next_u64() % kToyPrimes.size();
    std::size_t qi = rng.next_u64() % kToyPrimes.size();
    while (qi == pi) qi = rng.next_u64() % kToyPrimes.size();
    KeyPair kp = key_pair_from_primes(BigInt(kToyPrimes[pi]), BigInt(kToyPrimes[qi]));
    ChainGraph cg = init_chain(kp.params, "fixture-" + std::to_string(c));
    std::size_t length = 5 + rng.next_u64() % 16;
    for (std::size_t b = 0; b < length; ++b)
      append_random(cg, b == 0 ? std::nullopt : std::optional<std::size_t>(b - 1), rng);

    for (int r = 0; r < 5; ++r) {
      json before = json::parse(serialize_chain(cg));
      std::size_t pos = redact_random(cg, kp.secret, rng);
      json after = json::parse(serialize_chain(cg));
      std::string problem = locality_problem(before, after, pos);
      if (!problem.empty())
        return bad("chain " + std::to_string(c) + ", redaction " + std::to_string(r) + ": " +
                   problem);
      if (!verify_chain(cg).ok)
        return bad("chain " + std::to_string(c) + " failed verification after redacting block " +
                   std::to_string(pos));
      ++redactions;
    }
    fx.keys.push_back(std::move(kp));
    fx.chains.push_back(std::move(cg));
  }
  return ok(std::to_string(redactions) + " redactions over 50 chains, all local, all verified");
}

Outcome criterion2(const Fixtures& fx) {
  if (fx.chains.empty()) return bad("fixtures unavailable (criterion 1 failed)");
  int mutations = 0;
  int false_passes = 0;
  for (const ChainGraph& cg : fx.chains) {
    const BigInt n = cg.params.modulus_n;
    for (std::size_t i = 0; i < cg.blocks.size(); ++i) {
      if (children_of(cg, i).empty()) continue;
      auto mutated = [&](const std::function<void(Block&)>& tweak) {
        ChainGraph copy = cg;
        tweak(copy.blocks[i]);
        ++mutations;
        if (verify_chain(copy).ok) ++false_passes;
      };
      mutated([](Block& b) { b.content.front() ^= 0x01; });
      mutated([&](Block& b) { b.suffix = (b.suffix + 1) % n; });
      mutated([&](Block& b) { b.prefix = (b.prefix + 1) % n; });
      mutated([](Block& b) { b.offset += 1; });
    }
  }
  if (mutations < 1000) return bad("only " + std::to_string(mutations) + " mutations");
  if (false_passes != 0)
    return bad(std::to_string(false_passes) + " of " + std::to_string(mutations) +
               " mutations slipped through");
  return ok(std::to_string(mutations) + " single-field mutations, all detected");
}

Outcome criterion3() {
  const std::array<std::pair<unsigned, unsigned>, 3> toys = {
      {{7, 11}, {23, 47}, {167, 179}}};
  long checked = 0;
  for (auto [p, q] : toys) {
    KeyPair kp = key_pair_from_primes(BigInt(p), BigInt(q));
    const BigInt& phi = kp.secret.phi;
    for (BigInt d_raw = 0; d_raw < phi; ++d_raw) {
      PaddedExponent pe = pad_exponent(d_raw, kp.secret);
      PaddedExponent again = pad_exponent(d_raw, kp.secret);
      std::string at = " at d_raw=" + d_raw.get_str() + " phi=" + phi.get_str();
      if (pe.d != again.d || pe.offset != again.offset) return bad("nondeterministic" + at);
      if (pe.d < 2) return bad("d below 2" + at);
      if (pe.d != d_raw + pe.offset) return bad("offset does not explain d" + at);
      if (pe.offset < -8 || pe.offset > 8) return bad("offset beyond 8" + at);
      BigInt g, k = pe.d * pe.d + 1;
      mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), phi.get_mpz_t());
      if (g != 1) return bad("d^2+1 shares a factor with phi" + at);
      ++checked;
    }
  }
  return ok(std::to_string(checked) + " exhaustive paddings over 3 keys, |offset| <= 8");
}

Outcome criterion4() {
  std::vector<KeyPair> pool;
  pool.push_back(key_pair_from_primes(7, 11));
  pool.push_back(key_pair_from_primes(23, 47));
  pool.push_back(key_pair_from_primes(2063, 2099));
  DeterministicRng rng(seed_from_hex("ac04"));
  for (int t = 0; t < 1000; ++t) {
    const KeyPair& kp = pool[t % pool.size()];
    const BigInt& n = kp.params.modulus_n;
    const BigInt& phi = kp.secret.phi;
    PaddedExponent pe = pad_exponent(rng.below(n), kp.secret);
    BigInt e = redaction_exponent(pe, kp.secret);
    BigInt k = pe.d * pe.d + 1;
    if (e * k % phi != 1) return bad("e*(d^2+1) != 1 mod phi at trial " + std::to_string(t));
    BigInt prefix, g;
    do {
      prefix = rng.below(n - 3) + 2;
      mpz_gcd(g.get_mpz_t(), prefix.get_mpz_t(), n.get_mpz_t());
    } while (g != 1);
    if (mod_exp(mod_exp(prefix, e, n), k, n) != prefix)
      return bad("(P^e')^(d^2+1) != P at trial " + std::to_string(t));
  }
  return ok("1000 trials: inverse identity and round trip both exact");
}

Outcome criterion5() {
  KeyPair toy = key_pair_from_primes(2063, 2099);
  DeterministicRng rng(seed_from_hex("ac05"));
  int weak = 0, resisted = 0;
  for (int t = 0; t < 100; ++t) {
    WeakCollision wc = make_weak_collision(toy.secret, toy.params, rng);
    auto [x_forged, d_forged] = two_step_forge(wc);
    if (mod_exp(x_forged, d_forged, wc.n) == mod_exp(wc.x, wc.d, wc.n)) ++weak;
    if (strong_scheme_resists(wc)) ++resisted;
  }
  if (weak != 100) return bad("weak-scheme forgery held in only " + std::to_string(weak) + "/100");
  if (resisted < 99) return bad("strong scheme resisted only " + std::to_string(resisted) + "/100");

  KeyPair big = keygen(256, seed_from_hex("ac0512"));
  int weak_big = 0, resisted_big = 0;
  for (int t = 0; t < 20; ++t) {
    WeakCollision wc = make_weak_collision(big.secret, big.params, rng);
    auto [x_forged, d_forged] = two_step_forge(wc);
    if (mod_exp(x_forged, d_forged, wc.n) == mod_exp(wc.x, wc.d, wc.n)) ++weak_big;
    if (strong_scheme_resists(wc)) ++resisted_big;
  }
  if (weak_big != 20 || resisted_big != 20)
    return bad("512-bit key: weak " + std::to_string(weak_big) + "/20, resisted " +
               std::to_string(resisted_big) + "/20");
  return ok("toy: weak 100/100, resisted " + std::to_string(resisted) +
            "/100; 512-bit: weak 20/20, resisted 20/20");
}

Outcome criterion6() {
  KeyPair kp = key_pair_from_primes(2579, 2819);
  ChainGraph cg = init_chain(kp.params, "fork-fixture");
  append(cg, std::nullopt, bytes_of("B1"), seed_from_hex("ac0601"));
  append(cg, 0, bytes_of("B2"), seed_from_hex("ac0602"));
  append(cg, 1, bytes_of("B3"), seed_from_hex("ac0603"));
  std::size_t b_in = branch(cg, 1, seed_from_hex("ac0604"));
  std::size_t b_prime = append(cg, b_in, bytes_of("B-prime"), seed_from_hex("ac0605"));

  json before = json::parse(serialize_chain(cg));
  redact(cg, kp.secret, 1, bytes_of("B2 rewritten"));
  json after = json::parse(serialize_chain(cg));

  VerificationReport report = verify_chain(cg);
  if (!report.ok) return bad("chain failed verification after redacting the fork point");
  for (std::size_t i : {std::size_t{0}, std::size_t{2}, b_in, b_prime})
    if (before.at("blocks")[i] != after.at("blocks")[i])
      return bad("block " + std::to_string(i) + " changed");
  if (before.at("blocks")[1] == after.at("blocks")[1]) return bad("block 1 did not change");
  return ok("B1 -> B2 -> {B3, B_in -> B'}: redacted B2, other blocks bit-identical");
}

Outcome criterion7() {
  DeterministicRng rng(seed_from_hex("ac07"));
  for (int t = 0; t < 10000; ++t) {
    std::uint64_t mod = 2 + rng.next_u64() % 65535;
    std::uint64_t exp = rng.next_u64() % 4097;
    std::uint64_t base = rng.next_u64() % (std::uint64_t{1} << 20);
    BigInt fast = mod_exp(BigInt(static_cast<unsigned long>(base)),
                          BigInt(static_cast<unsigned long>(exp)),
                          BigInt(static_cast<unsigned long>(mod)));
    std::uint64_t slow = oracle::naive_mod_exp_u64(base, exp, mod);
    if (fast != BigInt(static_cast<unsigned long>(slow)))
      return bad("mismatch at " + std::to_string(base) + "^" + std::to_string(exp) + " mod " +
                 std::to_string(mod));
  }
  return ok("10000 triples agree with schoolbook exponentiation");
}

Outcome criterion8(bool with_2048, std::string& smoke_line) {
  Clock::time_point t0 = Clock::now();
  KeyPair kp = keygen(256, seed_from_hex("ac08"));
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= 60.0) return bad("512-bit keygen took " + std::to_string(secs) + "s");
  if (!is_safe_prime(kp.secret.p, 64) || !is_safe_prime(kp.secret.q, 64))
    return bad("a generated prime failed is_safe_prime(., 64)");
  if (bit_length(kp.params.modulus_n) < 511) return bad("modulus shorter than expected");

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs", secs);
  std::string detail = std::string("512-bit keygen in ") + buf + ", both primes safe";

  if (!with_2048) {
    smoke_line = "criterion 8 smoke (2048-bit): skipped (enable with --with-2048)";
    return ok(detail + "; 2048-bit smoke skipped");
  }
  t0 = Clock::now();
  KeyPair big = keygen(1024, seed_from_hex("ac082048"));
  double big_secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool big_ok = big_secs < 1200.0 && is_safe_prime(big.secret.p, 64) &&
                is_safe_prime(big.secret.q, 64);
  std::snprintf(buf, sizeof buf, "%.1fs", big_secs);
  smoke_line = std::string("criterion 8 smoke (2048-bit): ") + (big_ok ? "PASS" : "FAIL") +
               " (keygen in " + buf + ")";
  if (!big_ok) return bad(detail + "; 2048-bit smoke failed");
  return ok(detail + "; 2048-bit smoke in " + buf);
}

int run_step(const std::string& cmd) {
  int raw = std::system(cmd.c_str());
  if (raw == -1) return -1;
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome criterion9(const std::string& cli) {
  if (cli.empty()) return bad("no CLI path; pass --cli or set RBCHAIN_CLI");
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("rbchain-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path key = dir / "key.json";
  fs::path chain = dir / "chain.json";
  fs::path before = dir / "before.json";
  fs::path log = dir / "steps.log";

  auto quoted = [](const fs::path& p) { return "'" + p.string() + "'"; };
  std::string tail = " >> " + quoted(log) + " 2>&1";
  const std::string steps[] = {
      cli + " keygen --bits 32 --seed a9 --out " + quoted(key),
      cli + " init --key " + quoted(key) + " --chain-id acceptance-e2e --out " + quoted(chain),
      cli + " append --chain " + quoted(chain) + " --content-str alpha --seed 01",
      cli + " append --chain " + quoted(chain) + " --content-str bravo --seed 02",
      cli + " append --chain " + quoted(chain) + " --content-str charlie --seed 03",
      cli + " verify --chain " + quoted(chain),
      "cp " + quoted(chain) + " " + quoted(before),
      cli + " redact --chain " + quoted(chain) + " --key " + quoted(key) +
          " --block 1 --content-str 'bravo, redacted'",
      cli + " verify --chain " + quoted(chain),
  };
  for (std::size_t i = 0; i < std::size(steps); ++i) {
    int code = run_step(steps[i] + tail);
    if (code != 0) {
      fs::remove_all(dir);
      return bad("step " + std::to_string(i + 1) + " exited " + std::to_string(code) + ": " +
                 steps[i]);
    }
  }

  json pre = json::parse(read_file(before));
  json post = json::parse(read_file(chain));
  fs::remove_all(dir);
  if (pre.at("header") != post.at("header")) return bad("header changed across redact");
  const json& a = pre.at("blocks");
  const json& b = post.at("blocks");
  if (a.size() != b.size()) return bad("block count changed across redact");
  int changed = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++changed;
  if (changed != 1) return bad(std::to_string(changed) + " block records changed, expected 1");
  return ok("9 steps exit 0, chain files differ in exactly one block record");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  bool with_2048 = false;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else if (arg == "--with-2048") {
      with_2048 = true;
    } else {
      std::cerr << "usage: acceptance [--cli <path>] [--with-2048]\n";
      return 2;
    }
  }
  if (cli.empty())
    if (const char* env = std::getenv("RBCHAIN_CLI")) cli = env;

  Fixtures fx;
  std::string smoke_line;
  struct Criterion {
    int number;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "redaction locality", 10.0, [&] { return criterion1(fx); }},
      {2, "tamper detection", 30.0, [&] { return criterion2(fx); }},
      {3, "padding correctness", 5.0, criterion3},
      {4, "redaction algebra", 0.0, criterion4},
      {5, "two-step attack", 60.0, criterion5},
      {6, "fork/redact interaction", 0.0, criterion6},
      {7, "oracle equivalence", 0.0, criterion7},
      {8, "key generation", 0.0, [&] { return criterion8(with_2048, smoke_line); }},
      {9, "end-to-end cli", 0.0, [&] { return criterion9(cli); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Clock::time_point t0 = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = bad(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (outcome.pass && c.budget > 0.0 && secs > c.budget) {
      outcome.pass = false;
      outcome.detail += "; exceeded " + std::to_string(static_cast<int>(c.budget)) + "s budget";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "criterion " << c.number << " (" << c.name << "): "
              << (outcome.pass ? "PASS" : "FAIL") << " [" << timing << "] " << outcome.detail
              << std::endl;
    if (!outcome.pass) ++failures;
    if (c.number == 8 && !smoke_line.empty()) std::cout << smoke_line << std::endl;
  }

  if (failures == 0) {
    std::cout << "acceptance: all criteria pass" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) failed" << std::endl;
  return 1;
}
