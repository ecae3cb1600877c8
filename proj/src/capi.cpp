#include "rbchain.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "attack.hpp"
#include "chain_io.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "keys.hpp"
#include "ledger.hpp"
#include "linkage.hpp"
#include "modmath.hpp"

struct rbc_key {
  rbchain::KeyFileData data;
};

struct rbc_chain {
  rbchain::ChainGraph graph;
};

struct rbc_report {
  rbchain::VerificationReport report;
  std::vector<std::string> lines;
};

namespace {

using namespace rbchain;

thread_local std::string g_last_error;

rbc_status status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::not_found:
    case Errc::must_branch:
    case Errc::must_append:
    case Errc::leaf_redaction:
      return RBC_ERR_ARGUMENT;
    case Errc::parse_error:
      return RBC_ERR_PARSE;
    case Errc::integrity_error:
      return RBC_ERR_INTEGRITY;
    case Errc::io_error:
      return RBC_ERR_IO;
    default:
      return RBC_ERR_CRYPTO;
  }
}

template <typename F>
rbc_status wrap(F&& body) noexcept {
  try {
    return body();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RBC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RBC_ERR_INTERNAL;
  }
}

rbc_status arg_error(const char* what) {
  g_last_error = what;
  return RBC_ERR_ARGUMENT;
}

RngSeed seed_or_entropy(const char* seed_hex) {
  return seed_hex ? seed_from_hex(seed_hex) : random_seed();
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const Block* checked_block(const rbc_chain* chain, size_t block) {
  if (!chain) {
    g_last_error = "chain is null";
    return nullptr;
  }
  if (block >= chain->graph.blocks.size()) {
    g_last_error = "block index out of range";
    return nullptr;
  }
  return &chain->graph.blocks[block];
}

}  // namespace

extern "C" {

const char* rbc_last_error(void) { return g_last_error.c_str(); }

void rbc_string_free(char* s) { delete[] s; }
void rbc_bytes_free(uint8_t* p) { delete[] p; }

rbc_status rbc_keygen(unsigned bits_per_prime, const char* seed_hex,
                      const char* hash_alg, rbc_key** out) {
  if (!out) return arg_error("out is null");
  return wrap([&] {
    HashAlg alg = HashAlg::sha256;
    if (hash_alg) {
      auto parsed = hash_alg_by_name(hash_alg);
      if (!parsed) fail(Errc::invalid_argument, std::string("unknown hash algorithm: ") + hash_alg);
      alg = *parsed;
    }
    KeyPair kp = keygen(bits_per_prime, seed_or_entropy(seed_hex), alg);
    *out = new rbc_key{KeyFileData{kp.params, true, kp.secret}};
    return RBC_OK;
  });
}

rbc_status rbc_key_load(const char* path, rbc_key** out) {
  if (!path || !out) return arg_error("path/out is null");
  return wrap([&] {
    *out = new rbc_key{parse_key(read_file(path))};
    return RBC_OK;
  });
}

rbc_status rbc_key_save(const rbc_key* key, const char* path, int include_private) {
  if (!key || !path) return arg_error("key/path is null");
  return wrap([&] {
    if (include_private && !key->data.has_private)
      fail(Errc::invalid_argument, "key has no private part to save");
    KeyFileData kf = key->data;
    kf.has_private = include_private != 0;
    write_file_atomic(path, serialize_key(kf));
    return RBC_OK;
  });
}

void rbc_key_free(rbc_key* key) { delete key; }

int rbc_key_has_private(const rbc_key* key) {
  return key && key->data.has_private ? 1 : 0;
}

rbc_status rbc_key_modulus_hex(const rbc_key* key, char** out) {
  if (!key || !out) return arg_error("key/out is null");
  return wrap([&] {
    *out = dup_string(to_hex(key->data.params.modulus_n));
    return RBC_OK;
  });
}

const char* rbc_key_hash_alg(const rbc_key* key) {
  if (!key) return "";
  return hash_alg_name(key->data.params.hash_alg).data();
}

rbc_status rbc_chain_init(const rbc_key* key, const char* chain_id, rbc_chain** out) {
  if (!key || !chain_id || !out) return arg_error("key/chain_id/out is null");
  return wrap([&] {
    *out = new rbc_chain{init_chain(key->data.params, chain_id)};
    return RBC_OK;
  });
}

rbc_status rbc_chain_load(const char* path, int verify, rbc_chain** out) {
  if (!path || !out) return arg_error("path/out is null");
  return wrap([&] {
    *out = new rbc_chain{parse_chain(read_file(path), verify != 0)};
    return RBC_OK;
  });
}

rbc_status rbc_chain_save(const rbc_chain* chain, const char* path) {
  if (!chain || !path) return arg_error("chain/path is null");
  return wrap([&] {
    write_file_atomic(path, serialize_chain(chain->graph));
    return RBC_OK;
  });
}

void rbc_chain_free(rbc_chain* chain) { delete chain; }

rbc_status rbc_chain_append(rbc_chain* chain, int64_t parent, const uint8_t* content,
                            size_t content_len, const char* seed_hex, size_t* new_index) {
  if (!chain) return arg_error("chain is null");
  if (!content && content_len > 0) return arg_error("content is null");
  if (parent < -1) return arg_error("parent must be -1 or a block index");
  return wrap([&] {
    std::optional<std::size_t> p;
    if (parent >= 0) p = static_cast<std::size_t>(parent);
    DeterministicRng rng(seed_or_entropy(seed_hex));
    std::size_t idx = append(chain->graph, p, {content, content_len}, rng);
    if (new_index) *new_index = idx;
    return RBC_OK;
  });
}

rbc_status rbc_chain_branch(rbc_chain* chain, size_t at, const char* seed_hex,
                            size_t* new_index) {
  if (!chain) return arg_error("chain is null");
  return wrap([&] {
    DeterministicRng rng(seed_or_entropy(seed_hex));
    std::size_t idx = branch(chain->graph, at, rng);
    if (new_index) *new_index = idx;
    return RBC_OK;
  });
}

rbc_status rbc_chain_redact(rbc_chain* chain, const rbc_key* key, size_t block,
                            const uint8_t* content, size_t content_len,
                            char** record_json) {
  if (!chain || !key) return arg_error("chain/key is null");
  if (!content && content_len > 0) return arg_error("content is null");
  if (!key->data.has_private) return arg_error("key has no private part");
  return wrap([&] {
    RedactionRecord rec = redact(chain->graph, key->data.sk, block, {content, content_len});
    if (record_json) {
      nlohmann::ordered_json j;
      j["block"] = rec.block;
      j["old_content_digest"] = rec.old_content_digest;
      j["new_content_digest"] = rec.new_content_digest;
      j["offset"] = rec.offset;
      j["timestamp"] = rec.timestamp;
      *record_json = dup_string(j.dump(2));
    }
    return RBC_OK;
  });
}

rbc_status rbc_chain_verify(const rbc_chain* chain, rbc_report** out) {
  if (!chain || !out) return arg_error("chain/out is null");
  return wrap([&] {
    auto* r = new rbc_report;
    r->report = verify_chain(chain->graph);
    r->lines = r->report.lines();
    *out = r;
    return RBC_OK;
  });
}

size_t rbc_chain_block_count(const rbc_chain* chain) {
  return chain ? chain->graph.blocks.size() : 0;
}

const char* rbc_chain_id(const rbc_chain* chain) {
  return chain ? chain->graph.chain_id.c_str() : "";
}

const char* rbc_chain_hash_alg(const rbc_chain* chain) {
  if (!chain) return "";
  return hash_alg_name(chain->graph.params.hash_alg).data();
}

rbc_status rbc_chain_modulus_hex(const rbc_chain* chain, char** out) {
  if (!chain || !out) return arg_error("chain/out is null");
  return wrap([&] {
    *out = dup_string(to_hex(chain->graph.params.modulus_n));
    return RBC_OK;
  });
}

rbc_status rbc_chain_genesis_hex(const rbc_chain* chain, char** out) {
  if (!chain || !out) return arg_error("chain/out is null");
  return wrap([&] {
    *out = dup_string(to_hex(chain->graph.params.genesis_prefix));
    return RBC_OK;
  });
}

rbc_status rbc_block_kind(const rbc_chain* chain, size_t block, int* kind) {
  if (!kind) return arg_error("kind is null");
  const Block* b = checked_block(chain, block);
  if (!b) return RBC_ERR_ARGUMENT;
  *kind = b->kind == BlockKind::intermediate ? 1 : 0;
  return RBC_OK;
}

rbc_status rbc_block_parent(const rbc_chain* chain, size_t block, int64_t* parent) {
  if (!parent) return arg_error("parent is null");
  const Block* b = checked_block(chain, block);
  if (!b) return RBC_ERR_ARGUMENT;
  *parent = b->parent;
  return RBC_OK;
}

rbc_status rbc_block_offset(const rbc_chain* chain, size_t block, int* offset) {
  if (!offset) return arg_error("offset is null");
  const Block* b = checked_block(chain, block);
  if (!b) return RBC_ERR_ARGUMENT;
  *offset = b->offset;
  return RBC_OK;
}

rbc_status rbc_block_prefix_hex(const rbc_chain* chain, size_t block, char** out) {
  if (!out) return arg_error("out is null");
  const Block* b = checked_block(chain, block);
  if (!b) return RBC_ERR_ARGUMENT;
  return wrap([&] {
    *out = dup_string(to_hex(b->prefix));
    return RBC_OK;
  });
}

rbc_status rbc_block_suffix_hex(const rbc_chain* chain, size_t block, char** out) {
  if (!out) return arg_error("out is null");
  const Block* b = checked_block(chain, block);
  if (!b) return RBC_ERR_ARGUMENT;
  return wrap([&] {
    *out = dup_string(to_hex(b->suffix));
    return RBC_OK;
  });
}

rbc_status rbc_block_content(const rbc_chain* chain, size_t block, uint8_t** out,
                             size_t* len) {
  if (!out || !len) return arg_error("out/len is null");
  const Block* b = checked_block(chain, block);
  if (!b) return RBC_ERR_ARGUMENT;
  return wrap([&] {
    auto* buf = new uint8_t[b->content.empty() ? 1 : b->content.size()];
    if (!b->content.empty()) std::memcpy(buf, b->content.data(), b->content.size());
    *out = buf;
    *len = b->content.size();
    return RBC_OK;
  });
}

rbc_status rbc_block_next_prefix_hex(const rbc_chain* chain, size_t block, char** out) {
  if (!chain || !out) return arg_error("chain/out is null");
  return wrap([&] {
    *out = dup_string(to_hex(emitted_next_prefix(chain->graph, block)));
    return RBC_OK;
  });
}

int rbc_report_ok(const rbc_report* report) { return report && report->report.ok ? 1 : 0; }

size_t rbc_report_line_count(const rbc_report* report) {
  return report ? report->lines.size() : 0;
}

const char* rbc_report_line(const rbc_report* report, size_t i) {
  if (!report || i >= report->lines.size()) return nullptr;
  return report->lines[i].c_str();
}

void rbc_report_free(rbc_report* report) { delete report; }

rbc_status rbc_attack_demo(const rbc_key* key, unsigned trials, const char* seed_hex,
                           unsigned* weak_forged, unsigned* strong_resisted) {
  if (!key || !weak_forged || !strong_resisted) return arg_error("key/out is null");
  if (!key->data.has_private) return arg_error("key has no private part");
  return wrap([&] {
    DeterministicRng rng(seed_or_entropy(seed_hex));
    const BigInt& n = key->data.params.modulus_n;
    unsigned weak = 0;
    unsigned strong = 0;
    for (unsigned t = 0; t < trials; ++t) {
      WeakCollision wc = make_weak_collision(key->data.sk, key->data.params, rng);
      auto [x_forged, d_forged] = two_step_forge(wc);
      if (mod_exp(x_forged, d_forged, n) == mod_exp(wc.x, wc.d, n)) ++weak;
      if (strong_scheme_resists(wc)) ++strong;
    }
    *weak_forged = weak;
    *strong_resisted = strong;
    return RBC_OK;
  });
}

}  // extern "C"
