// Command-line front end. Talks to the library strictly through the C API,
// which keeps the shared-library boundary honest.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbchain.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIntegrity = 3;

struct KeyDeleter {
  void operator()(rbc_key* k) const { rbc_key_free(k); }
};
struct ChainDeleter {
  void operator()(rbc_chain* c) const { rbc_chain_free(c); }
};
struct ReportDeleter {
  void operator()(rbc_report* r) const { rbc_report_free(r); }
};
using KeyPtr = std::unique_ptr<rbc_key, KeyDeleter>;
using ChainPtr = std::unique_ptr<rbc_chain, ChainDeleter>;
using ReportPtr = std::unique_ptr<rbc_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  rbc_string_free(s);
  return out;
}

int exit_code_of(rbc_status st) {
  switch (st) {
    case RBC_OK:
      return kExitOk;
    case RBC_ERR_VERIFY:
      return kExitVerifyFailed;
    case RBC_ERR_ARGUMENT:
    case RBC_ERR_IO:
      return kExitUsage;
    default:
      return kExitIntegrity;
  }
}

int report_failure(rbc_status st) {
  std::cerr << "error: " << rbc_last_error() << "\n";
  return exit_code_of(st);
}

#define CHECK_API(call)                              \
  do {                                               \
    rbc_status st_ = (call);                         \
    if (st_ != RBC_OK) return report_failure(st_);   \
  } while (0)

const char* seed_arg(const std::string& seed) { return seed.empty() ? nullptr : seed.c_str(); }

std::string short_hex(const std::string& hex) {
  if (hex.size() <= 20) return hex;
  return hex.substr(0, 20) + "... (" + std::to_string(hex.size()) + " hex digits)";
}

// Content can come from --content-str or --content-file; exactly one.
struct ContentOpts {
  std::string literal;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--content-str", literal, "content as a literal string");
    auto* f = cmd->add_option("--content-file", file, "read content bytes from a file");
    s->excludes(f);
  }

  std::optional<std::vector<uint8_t>> resolve(bool given_str, bool given_file) const {
    if (given_str) return std::vector<uint8_t>(literal.begin(), literal.end());
    if (given_file) {
      std::ifstream in(file, std::ios::binary);
      if (!in) return std::nullopt;
      std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
      return bytes;
    }
    return std::nullopt;
  }
};

void render_content(std::ostream& os, const std::vector<uint8_t>& bytes) {
  bool printable = !bytes.empty();
  for (uint8_t b : bytes)
    if (b < 0x20 || b > 0x7e) printable = false;
  if (printable) {
    os << '"' << std::string(bytes.begin(), bytes.end()) << "\" (" << bytes.size() << " bytes)";
  } else {
    os << bytes.size() << " bytes";
  }
}

unsigned default_bits(std::string& problem) {
  const char* env = std::getenv("RBCHAIN_DEFAULT_BITS");
  if (!env || !*env) return 2048;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (!end || *end != '\0' || v < 16 || v > 65536 || v % 2 != 0) {
    problem = std::string("RBCHAIN_DEFAULT_BITS is not a usable key size: ") + env;
    return 0;
  }
  return static_cast<unsigned>(v);
}

int run_keygen(unsigned bits, const std::string& seed, const std::string& hash,
               const std::string& out) {
  rbc_key* raw = nullptr;
  CHECK_API(rbc_keygen(bits / 2, seed_arg(seed), hash.c_str(), &raw));
  KeyPtr key(raw);
  CHECK_API(rbc_key_save(key.get(), out.c_str(), 1));
  char* hex = nullptr;
  CHECK_API(rbc_key_modulus_hex(key.get(), &hex));
  std::string modulus = take_string(hex);
  std::cout << "wrote " << out << "\n";
  std::cout << "modulus_n: " << short_hex(modulus) << "\n";
  return kExitOk;
}

int run_init(const std::string& key_path, const std::string& chain_id, const std::string& out) {
  rbc_key* kraw = nullptr;
  CHECK_API(rbc_key_load(key_path.c_str(), &kraw));
  KeyPtr key(kraw);
  rbc_chain* craw = nullptr;
  CHECK_API(rbc_chain_init(key.get(), chain_id.c_str(), &craw));
  ChainPtr chain(craw);
  CHECK_API(rbc_chain_save(chain.get(), out.c_str()));
  char* hex = nullptr;
  CHECK_API(rbc_chain_genesis_hex(chain.get(), &hex));
  std::cout << "initialized chain \"" << chain_id << "\" in " << out << "\n";
  std::cout << "genesis_prefix: " << short_hex(take_string(hex)) << "\n";
  return kExitOk;
}

int run_append(const std::string& chain_path, const ContentOpts& content, bool given_str,
               bool given_file, std::optional<int64_t> parent, const std::string& seed) {
  auto bytes = content.resolve(given_str, given_file);
  if (!bytes) {
    std::cerr << "error: cannot read content\n";
    return kExitUsage;
  }
  rbc_chain* craw = nullptr;
  CHECK_API(rbc_chain_load(chain_path.c_str(), 1, &craw));
  ChainPtr chain(craw);
  int64_t target = parent ? *parent
                          : (rbc_chain_block_count(chain.get()) == 0
                                 ? -1
                                 : static_cast<int64_t>(rbc_chain_block_count(chain.get())) - 1);
  size_t index = 0;
  CHECK_API(rbc_chain_append(chain.get(), target, bytes->data(), bytes->size(),
                             seed_arg(seed), &index));
  CHECK_API(rbc_chain_save(chain.get(), chain_path.c_str()));
  std::cout << "appended block " << index;
  if (target >= 0) std::cout << " (parent " << target << ")";
  std::cout << "\n";
  return kExitOk;
}

int run_verify(const std::string& chain_path) {
  rbc_chain* craw = nullptr;
  CHECK_API(rbc_chain_load(chain_path.c_str(), 0, &craw));
  ChainPtr chain(craw);
  rbc_report* rraw = nullptr;
  CHECK_API(rbc_chain_verify(chain.get(), &rraw));
  ReportPtr report(rraw);
  std::cout << "chain \"" << rbc_chain_id(chain.get()) << "\": "
            << rbc_chain_block_count(chain.get()) << " block(s)\n";
  for (size_t i = 0; i < rbc_report_line_count(report.get()); ++i)
    std::cout << rbc_report_line(report.get(), i) << "\n";
  if (!rbc_report_ok(report.get())) {
    std::cout << "verification: FAIL\n";
    return kExitVerifyFailed;
  }
  std::cout << "verification: PASS\n";
  return kExitOk;
}

int run_redact(const std::string& chain_path, const std::string& key_path, size_t block,
               const ContentOpts& content, bool given_str, bool given_file) {
  auto bytes = content.resolve(given_str, given_file);
  if (!bytes) {
    std::cerr << "error: cannot read content\n";
    return kExitUsage;
  }
  rbc_chain* craw = nullptr;
  CHECK_API(rbc_chain_load(chain_path.c_str(), 1, &craw));
  ChainPtr chain(craw);
  rbc_key* kraw = nullptr;
  CHECK_API(rbc_key_load(key_path.c_str(), &kraw));
  KeyPtr key(kraw);
  char* record = nullptr;
  CHECK_API(rbc_chain_redact(chain.get(), key.get(), block, bytes->data(), bytes->size(),
                             &record));
  CHECK_API(rbc_chain_save(chain.get(), chain_path.c_str()));
  std::cout << take_string(record) << "\n";
  return kExitOk;
}

int run_branch(const std::string& chain_path, size_t at, const std::string& seed) {
  rbc_chain* craw = nullptr;
  CHECK_API(rbc_chain_load(chain_path.c_str(), 1, &craw));
  ChainPtr chain(craw);
  size_t index = 0;
  CHECK_API(rbc_chain_branch(chain.get(), at, seed_arg(seed), &index));
  CHECK_API(rbc_chain_save(chain.get(), chain_path.c_str()));
  std::cout << "opened branch at block " << at << " via intermediate block " << index << "\n";
  std::cout << "append to block " << index << " to grow the new branch\n";
  return kExitOk;
}

int run_attack_demo(const std::string& key_path, unsigned trials, const std::string& seed) {
  rbc_key* kraw = nullptr;
  CHECK_API(rbc_key_load(key_path.c_str(), &kraw));
  KeyPtr key(kraw);
  unsigned weak = 0;
  unsigned strong = 0;
  CHECK_API(rbc_attack_demo(key.get(), trials, seed_arg(seed), &weak, &strong));
  std::cout << "two-step forgery trials: " << trials << "\n";
  std::cout << "weak scheme (exponent d):      forgery accepted " << weak << "/" << trials
            << "\n";
  std::cout << "strong scheme (exponent d^2+1): forgery rejected " << strong << "/" << trials
            << "\n";
  return kExitOk;
}

int show_block(const rbc_chain* chain, size_t i) {
  int kind = 0;
  int64_t parent = 0;
  int offset = 0;
  CHECK_API(rbc_block_kind(chain, i, &kind));
  CHECK_API(rbc_block_parent(chain, i, &parent));
  CHECK_API(rbc_block_offset(chain, i, &offset));
  std::cout << "[" << i << "] " << (kind ? "intermediate" : "normal") << " parent=" << parent
            << " offset=" << offset << "\n";

  char* hex = nullptr;
  CHECK_API(rbc_block_prefix_hex(chain, i, &hex));
  std::cout << "    prefix:  " << short_hex(take_string(hex)) << "\n";
  CHECK_API(rbc_block_suffix_hex(chain, i, &hex));
  std::cout << "    suffix:  " << short_hex(take_string(hex)) << "\n";

  uint8_t* data = nullptr;
  size_t len = 0;
  CHECK_API(rbc_block_content(chain, i, &data, &len));
  std::vector<uint8_t> bytes(data, data + len);
  rbc_bytes_free(data);
  std::cout << "    content: ";
  render_content(std::cout, bytes);
  std::cout << "\n";

  if (rbc_block_next_prefix_hex(chain, i, &hex) == RBC_OK)
    std::cout << "    next:    " << short_hex(take_string(hex)) << "\n";
  else
    std::cout << "    next:    (not computable)\n";
  return kExitOk;
}

int run_show(const std::string& chain_path, bool no_verify, std::optional<size_t> only) {
  rbc_chain* craw = nullptr;
  CHECK_API(rbc_chain_load(chain_path.c_str(), no_verify ? 0 : 1, &craw));
  ChainPtr chain(craw);
  char* hex = nullptr;
  std::cout << "chain_id:   " << rbc_chain_id(chain.get()) << "\n";
  std::cout << "hash_alg:   " << rbc_chain_hash_alg(chain.get()) << "\n";
  CHECK_API(rbc_chain_modulus_hex(chain.get(), &hex));
  std::cout << "modulus_n:  " << short_hex(take_string(hex)) << "\n";
  CHECK_API(rbc_chain_genesis_hex(chain.get(), &hex));
  std::cout << "genesis:    " << short_hex(take_string(hex)) << "\n";
  size_t count = rbc_chain_block_count(chain.get());
  std::cout << "blocks:     " << count << "\n";
  if (only) {
    if (*only >= count) {
      std::cerr << "error: block index out of range\n";
      return kExitUsage;
    }
    return show_block(chain.get(), *only);
  }
  for (size_t i = 0; i < count; ++i) {
    int rc = show_block(chain.get(), i);
    if (rc != kExitOk) return rc;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redactable chain tool: RSA-trapdoor blocks you can rewrite without breaking links"};
  app.require_subcommand(1);
  int rc = kExitOk;

  std::string env_problem;
  unsigned bits_default = default_bits(env_problem);

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a safe-prime RSA key pair");
  unsigned bits = bits_default ? bits_default : 2048;
  std::string kg_seed, kg_hash = "sha256", kg_out;
  keygen->add_option("--bits", bits, "modulus size in bits")
      ->check(CLI::Range(16u, 65536u))
      ->capture_default_str();
  keygen->add_option("--seed", kg_seed, "deterministic seed (1-64 hex digits)");
  keygen->add_option("--hash", kg_hash, "hash algorithm: sha256 or sha512")
      ->capture_default_str();
  keygen->add_option("--out", kg_out, "key file to write")->required();
  keygen->callback([&] {
    if (!env_problem.empty() && !keygen->count("--bits")) {
      std::cerr << "error: " << env_problem << "\n";
      rc = kExitUsage;
      return;
    }
    if (bits % 2 != 0) {
      std::cerr << "error: --bits must be even\n";
      rc = kExitUsage;
      return;
    }
    rc = run_keygen(bits, kg_seed, kg_hash, kg_out);
  });

  // init
  auto* init = app.add_subcommand("init", "create an empty chain bound to a key and chain id");
  std::string in_key, in_id, in_out;
  init->add_option("--key", in_key, "key file")->required();
  init->add_option("--chain-id", in_id, "chain identifier")->required();
  init->add_option("--out", in_out, "chain file to write")->required();
  init->callback([&] { rc = run_init(in_key, in_id, in_out); });

  // append
  auto* append = app.add_subcommand("append", "append a block (default parent: last block)");
  std::string ap_chain, ap_seed;
  int64_t ap_parent = -1;
  ContentOpts ap_content;
  append->add_option("--chain", ap_chain, "chain file")->required();
  ap_content.attach(append);
  auto* ap_parent_opt = append->add_option("--parent", ap_parent, "parent block index");
  append->add_option("--seed", ap_seed, "deterministic seed (1-64 hex digits)");
  append->callback([&] {
    bool has_str = append->count("--content-str") > 0;
    bool has_file = append->count("--content-file") > 0;
    if (!has_str && !has_file) {
      std::cerr << "error: one of --content-str / --content-file is required\n";
      rc = kExitUsage;
      return;
    }
    std::optional<int64_t> parent;
    if (ap_parent_opt->count()) parent = ap_parent;
    rc = run_append(ap_chain, ap_content, has_str, has_file, parent, ap_seed);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "recompute every link and report");
  std::string vf_chain;
  verify->add_option("--chain", vf_chain, "chain file")->required();
  verify->callback([&] { rc = run_verify(vf_chain); });

  // redact
  auto* redact = app.add_subcommand("redact", "rewrite a block's content with the private key");
  std::string rd_chain, rd_key;
  size_t rd_block = 0;
  ContentOpts rd_content;
  redact->add_option("--chain", rd_chain, "chain file")->required();
  redact->add_option("--key", rd_key, "key file with private part")->required();
  redact->add_option("--block", rd_block, "block index to rewrite")->required();
  rd_content.attach(redact);
  redact->callback([&] {
    bool has_str = redact->count("--content-str") > 0;
    bool has_file = redact->count("--content-file") > 0;
    if (!has_str && !has_file) {
      std::cerr << "error: one of --content-str / --content-file is required\n";
      rc = kExitUsage;
      return;
    }
    rc = run_redact(rd_chain, rd_key, rd_block, rd_content, has_str, has_file);
  });

  // branch
  auto* branch = app.add_subcommand("branch", "open a second branch at an occupied block");
  std::string br_chain, br_seed;
  size_t br_at = 0;
  branch->add_option("--chain", br_chain, "chain file")->required();
  branch->add_option("--at", br_at, "block index to branch from")->required();
  branch->add_option("--seed", br_seed, "deterministic seed (1-64 hex digits)");
  branch->callback([&] { rc = run_branch(br_chain, br_at, br_seed); });

  // attack-demo
  auto* attack = app.add_subcommand("attack-demo",
                                    "run the two-step forgery against both schemes");
  std::string at_key, at_seed;
  unsigned at_trials = 100;
  attack->add_option("--key", at_key, "key file with private part")->required();
  attack->add_option("--trials", at_trials, "number of collision trials")
      ->check(CLI::Range(1u, 1000000u))
      ->capture_default_str();
  attack->add_option("--seed", at_seed, "deterministic seed (1-64 hex digits)");
  attack->callback([&] { rc = run_attack_demo(at_key, at_trials, at_seed); });

  // show
  auto* show = app.add_subcommand("show", "print the chain header and blocks");
  std::string sh_chain;
  bool sh_no_verify = false;
  size_t sh_block = 0;
  show->add_option("--chain", sh_chain, "chain file")->required();
  show->add_flag("--no-verify", sh_no_verify, "skip verification on load");
  auto* sh_block_opt = show->add_option("--block", sh_block, "show a single block");
  show->callback([&] {
    std::optional<size_t> only;
    if (sh_block_opt->count()) only = sh_block;
    rc = run_show(sh_chain, sh_no_verify, only);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return rc;
}
