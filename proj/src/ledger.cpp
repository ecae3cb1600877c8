#include "ledger.hpp"

#include <chrono>

#include "errors.hpp"
#include "hashing.hpp"
#include "modmath.hpp"

namespace rbchain {

std::span<const std::uint8_t> intermediate_marker() {
  static const std::uint8_t marker[] = {'I', 'N', 'T', 'E', 'R', 'M', 'E',
                                        'D', 'I', 'A', 'T', 'E', 0x00};
  return {marker, sizeof(marker)};
}

namespace {

void check_params(const PublicParams& pp) {
  if (pp.modulus_n < 2 || mpz_even_p(pp.modulus_n.get_mpz_t()))
    fail(Errc::invalid_modulus, "modulus must be odd and >= 2");
}

const Block& block_at(const ChainGraph& cg, std::size_t pos) {
  if (pos >= cg.blocks.size())
    fail(Errc::not_found, "no block at index " + std::to_string(pos));
  return cg.blocks[pos];
}

std::string hex_digest(HashAlg alg, std::span<const std::uint8_t> data) {
  return to_hex(from_bytes_be(digest(alg, data)));
}

// Hash-derived exponent for a fresh block. d < 2 can never verify (the
// public rule requires d >= 2), so creation refuses such content outright;
// at realistic modulus sizes the case is unreachable.
BigInt fresh_exponent(const BigInt& prefix, std::span<const std::uint8_t> content,
                      const PublicParams& pp) {
  BigInt d = hash_to_exponent(prefix, content, pp);
  if (d < 2)
    fail(Errc::exponent_too_small,
         "content hashes to exponent " + to_hex(d) + "; adjust the content");
  return d;
}

}  // namespace

ChainGraph init_chain(const PublicParams& pp, const std::string& chain_id) {
  check_params(pp);
  ChainGraph cg;
  cg.params = pp;
  cg.chain_id = chain_id;
  std::span<const std::uint8_t> id_bytes(reinterpret_cast<const std::uint8_t*>(chain_id.data()),
                                         chain_id.size());
  BigInt g = from_bytes_be(digest(pp.hash_alg, id_bytes)) % pp.modulus_n;
  BigInt gcd_gn;
  for (;;) {
    mpz_gcd(gcd_gn.get_mpz_t(), g.get_mpz_t(), pp.modulus_n.get_mpz_t());
    if (g != 0 && gcd_gn == 1) break;
    g = (g + 1) % pp.modulus_n;
  }
  cg.params.genesis_prefix = g;
  return cg;
}

std::vector<std::size_t> children_of(const ChainGraph& cg, std::size_t pos) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cg.blocks.size(); ++i)
    if (cg.blocks[i].parent == static_cast<int>(pos)) out.push_back(i);
  return out;
}

BigInt emitted_next_prefix(const ChainGraph& cg, std::size_t pos) {
  const Block& b = block_at(cg, pos);
  BigInt d = hash_to_exponent(b.prefix, b.content, cg.params) + b.offset;
  return mod_exp(b.suffix, d * d + 1, cg.params.modulus_n);
}

std::size_t append(ChainGraph& cg, std::optional<std::size_t> parent,
                   std::span<const std::uint8_t> content, DeterministicRng& rng) {
  check_params(cg.params);
  BigInt prefix;
  int parent_index = -1;
  if (!parent) {
    if (!cg.blocks.empty())
      fail(Errc::invalid_argument, "graph already has a root; give an explicit parent");
    if (cg.params.genesis_prefix == 0)
      fail(Errc::invalid_argument, "chain has no genesis prefix; initialize it first");
    prefix = cg.params.genesis_prefix;
  } else {
    block_at(cg, *parent);
    if (!children_of(cg, *parent).empty())
      fail(Errc::must_branch,
           "block " + std::to_string(*parent) + " already has a child; use branch");
    prefix = emitted_next_prefix(cg, *parent);
    parent_index = static_cast<int>(*parent);
  }
  BigInt d = fresh_exponent(prefix, content, cg.params);
  BigInt x = sample_suffix(cg.params, rng);
  Block b;
  b.prefix = prefix;
  b.content.assign(content.begin(), content.end());
  b.suffix = x;
  b.parent = parent_index;
  b.next_prefix = mod_exp(x, d * d + 1, cg.params.modulus_n);
  cg.blocks.push_back(std::move(b));
  return cg.blocks.size() - 1;
}

std::size_t append(ChainGraph& cg, std::optional<std::size_t> parent,
                   std::span<const std::uint8_t> content, const RngSeed& seed) {
  DeterministicRng rng(seed);
  return append(cg, parent, content, rng);
}

std::vector<std::string> VerificationReport::lines() const {
  std::vector<std::string> out;
  for (const auto& p : problems) {
    std::string where = p.block ? "block " + std::to_string(*p.block) : "chain";
    out.push_back("FAIL " + where + ": " + p.detail);
  }
  for (const auto& e : edges) {
    std::string line = "edge " + std::to_string(e.parent) + " -> " + std::to_string(e.child);
    line += e.ok ? ": ok" : ": FAIL (" + e.detail + ")";
    out.push_back(line);
  }
  return out;
}

VerificationReport verify_chain(const ChainGraph& cg) {
  VerificationReport report;
  const BigInt& n = cg.params.modulus_n;

  if (n < 2 || mpz_even_p(n.get_mpz_t())) {
    report.problems.push_back({std::nullopt, "modulus must be odd and >= 2"});
    return report;
  }
  if (cg.blocks.empty()) {
    report.ok = true;
    return report;
  }

  for (std::size_t i = 0; i < cg.blocks.size(); ++i) {
    const Block& b = cg.blocks[i];
    if (i == 0) {
      if (b.parent != -1)
        report.problems.push_back({i, "root block must have parent -1"});
      if (b.prefix != cg.params.genesis_prefix)
        report.problems.push_back({i, "root prefix does not match the genesis prefix"});
    } else if (b.parent < 0 || static_cast<std::size_t>(b.parent) >= i) {
      report.problems.push_back({i, "parent index must name an earlier block"});
    }
    if (b.prefix < 0 || b.prefix >= n)
      report.problems.push_back({i, "prefix out of range"});
    if (!suffix_is_valid(b.suffix, n))
      report.problems.push_back({i, "suffix violates its invariants"});
    if (b.kind == BlockKind::intermediate) {
      auto marker = intermediate_marker();
      if (b.content.size() != marker.size() ||
          !std::equal(b.content.begin(), b.content.end(), marker.begin()))
        report.problems.push_back({i, "intermediate block lacks the fixed marker content"});
    }
  }

  // Each edge is recomputed from the parent's stored fields; caches and the
  // parent's own validity problems are ignored here so a single corrupt
  // block surfaces as exactly its own failing edges.
  for (std::size_t i = 1; i < cg.blocks.size(); ++i) {
    const Block& b = cg.blocks[i];
    if (b.parent < 0 || static_cast<std::size_t>(b.parent) >= i) continue;
    auto parent = static_cast<std::size_t>(b.parent);
    const Block& pb = cg.blocks[parent];
    EdgeReport edge;
    edge.parent = parent;
    edge.child = i;
    if (pb.offset < -kMaxPaddingOffset || pb.offset > kMaxPaddingOffset) {
      edge.detail = "parent padding offset out of bounds";
    } else if (!suffix_is_valid(pb.suffix, n)) {
      edge.detail = "parent suffix invalid";
    } else {
      BigInt d = hash_to_exponent(pb.prefix, pb.content, cg.params) + pb.offset;
      if (d < 2) {
        edge.detail = "parent link exponent below 2";
      } else if (mod_exp(pb.suffix, d * d + 1, n) != b.prefix) {
        edge.detail = "recomputed link does not match the child prefix";
      } else {
        edge.ok = true;
      }
    }
    report.edges.push_back(std::move(edge));
  }

  // Every child after the first must be mediated by an intermediate block.
  for (std::size_t i = 0; i < cg.blocks.size(); ++i) {
    auto kids = children_of(cg, i);
    for (std::size_t k = 1; k < kids.size(); ++k) {
      if (cg.blocks[kids[k]].kind != BlockKind::intermediate)
        report.problems.push_back(
            {kids[k], "extra child of block " + std::to_string(i) + " must be intermediate"});
    }
  }

  report.ok = report.problems.empty();
  for (const auto& e : report.edges) report.ok = report.ok && e.ok;
  return report;
}

RedactionRecord redact(ChainGraph& cg, const PrivateKey& sk, std::size_t pos,
                       std::span<const std::uint8_t> new_content) {
  if (pos >= cg.blocks.size())
    fail(Errc::not_found, "no block at index " + std::to_string(pos));
  Block& b = cg.blocks[pos];
  if (children_of(cg, pos).empty())
    fail(Errc::leaf_redaction,
         "block " + std::to_string(pos) + " is a leaf; rewrite it and re-append instead");

  const BigInt& n = cg.params.modulus_n;
  // The emitted next-prefix every child consumes; it must survive unchanged.
  BigInt preserved = emitted_next_prefix(cg, pos);
  if ((preserved * preserved) % n == 1)
    fail(Errc::unredactable_position,
         "emitted next-prefix is a square root of 1; no valid replacement suffix exists");

  BigInt d_raw = hash_to_exponent(b.prefix, new_content, cg.params);
  PaddedExponent pe = pad_exponent(d_raw, sk);
  BigInt e = redaction_exponent(pe, sk);
  BigInt new_suffix = mod_exp(preserved, e, n);

  RedactionRecord record;
  record.block = pos;
  record.old_content_digest = hex_digest(cg.params.hash_alg, b.content);
  record.new_content_digest = hex_digest(cg.params.hash_alg, new_content);
  record.offset = pe.offset;
  record.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();

  b.content.assign(new_content.begin(), new_content.end());
  b.offset = pe.offset;
  b.suffix = new_suffix;
  b.next_prefix = preserved;
  return record;
}

std::size_t branch(ChainGraph& cg, std::size_t at, DeterministicRng& rng) {
  block_at(cg, at);
  if (children_of(cg, at).empty())
    fail(Errc::must_append, "block " + std::to_string(at) + " has no child yet; append instead");
  BigInt prefix = emitted_next_prefix(cg, at);
  auto marker = intermediate_marker();
  BigInt d = fresh_exponent(prefix, marker, cg.params);
  BigInt x = sample_suffix(cg.params, rng);
  Block b;
  b.prefix = prefix;
  b.content.assign(marker.begin(), marker.end());
  b.suffix = x;
  b.kind = BlockKind::intermediate;
  b.parent = static_cast<int>(at);
  b.next_prefix = mod_exp(x, d * d + 1, cg.params.modulus_n);
  cg.blocks.push_back(std::move(b));
  return cg.blocks.size() - 1;
}

std::size_t branch(ChainGraph& cg, std::size_t at, const RngSeed& seed) {
  DeterministicRng rng(seed);
  return branch(cg, at, rng);
}

}  // namespace rbchain
