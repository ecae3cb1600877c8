#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "keys.hpp"
#include "linkage.hpp"
#include "rng.hpp"

namespace rbchain {

enum class BlockKind {
  normal,
  intermediate,  // content-free mediator that lets a node feed extra children
};

/// Fixed content of intermediate blocks.
std::span<const std::uint8_t> intermediate_marker();

struct Block {
  BigInt prefix;
  std::vector<std::uint8_t> content;
  BigInt suffix;
  int offset = 0;  // public padding offset; 0 until the block is redacted
  BlockKind kind = BlockKind::normal;
  int parent = -1;  // index of the parent block; -1 for the root
  BigInt next_prefix;  // cached link value; recomputable, never trusted by verify
};

/// Rooted tree of blocks (a linear chain is the one-child-per-node case).
/// Single-writer: append/redact/branch need exclusive access; reads and
/// verify_chain may run concurrently with each other.
struct ChainGraph {
  PublicParams params;  // genesis_prefix bound from the chain id
  std::string chain_id;
  std::vector<Block> blocks;
};

/// Empty graph whose genesis prefix is hash(chain_id) mod n, incremented
/// until it is a nonzero unit of n.
ChainGraph init_chain(const PublicParams& pp, const std::string& chain_id);

/// Child indices of `pos`, in file order.
std::vector<std::size_t> children_of(const ChainGraph& cg, std::size_t pos);

/// The block's emitted next-prefix, recomputed from its fields.
BigInt emitted_next_prefix(const ChainGraph& cg, std::size_t pos);

/// Appends a NORMAL block. parent == nullopt roots an empty graph at the
/// genesis prefix; otherwise the parent must be a leaf (use branch to give
/// a node a second child). Returns the new block's index.
std::size_t append(ChainGraph& cg, std::optional<std::size_t> parent,
                   std::span<const std::uint8_t> content, DeterministicRng& rng);
std::size_t append(ChainGraph& cg, std::optional<std::size_t> parent,
                   std::span<const std::uint8_t> content, const RngSeed& seed);

struct EdgeReport {
  std::size_t parent = 0;
  std::size_t child = 0;
  bool ok = false;
  std::string detail;  // empty when ok
};

struct ProblemReport {
  std::optional<std::size_t> block;  // nullopt for chain-level problems
  std::string detail;
};

struct VerificationReport {
  bool ok = false;
  std::vector<EdgeReport> edges;
  std::vector<ProblemReport> problems;  // suffix violations, structural defects

  std::vector<std::string> lines() const;  // one human-readable line per finding
};

/// Recomputes every link from scratch (caches ignored) and checks every
/// suffix invariant. Pure read; malformed data yields a failing report,
/// never an exception.
VerificationReport verify_chain(const ChainGraph& cg);

struct RedactionRecord {
  std::size_t block = 0;
  std::string old_content_digest;  // hex, using the chain's hash_alg
  std::string new_content_digest;
  int offset = 0;
  std::int64_t timestamp = 0;  // unix seconds
};

/// Rewrites the content of a non-leaf block using the trapdoor. The block's
/// emitted next-prefix is preserved, so every other block is bit-identical
/// afterward. Leaves are rejected: rewriting a leaf needs no trapdoor, just
/// rewrite and re-append.
RedactionRecord redact(ChainGraph& cg, const PrivateKey& sk, std::size_t pos,
                       std::span<const std::uint8_t> new_content);

/// Opens a new branch at a node that already has a child, by inserting an
/// INTERMEDIATE block that consumes the same prefix as the existing child.
/// Returns the intermediate's index; append to it to grow the branch.
/// Redacting the branching node afterward keeps both branches valid.
std::size_t branch(ChainGraph& cg, std::size_t at, DeterministicRng& rng);
std::size_t branch(ChainGraph& cg, std::size_t at, const RngSeed& seed);

}  // namespace rbchain
