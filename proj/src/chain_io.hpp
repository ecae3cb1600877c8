#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "keys.hpp"
#include "ledger.hpp"

namespace rbchain {

inline constexpr int kChainFormatVersion = 1;

std::string base64_encode(const std::vector<uint8_t>& data);
std::vector<uint8_t> base64_decode(const std::string& text);  // throws parse_error

/// ChainGraph <-> JSON text. serialize_chain emits a stable layout (2-space
/// indent, fixed key order) so chain diffs stay readable. parse_chain
/// validates structure, then runs verify_chain unless verify=false; a failed
/// verification surfaces as Errc::integrity_error naming the first bad edge.
std::string serialize_chain(const ChainGraph& cg);
ChainGraph parse_chain(const std::string& text, bool verify = true);

struct KeyFileData {
  PublicParams params;
  bool has_private = false;
  PrivateKey sk;  // valid only when has_private
};

/// KeyFile <-> JSON text. Parsing a file with a private part recomputes
/// p*q == n and both safe-prime checks (Errc::integrity_error on mismatch).
std::string serialize_key(const KeyFileData& kf);
KeyFileData parse_key(const std::string& text);

std::string read_file(const std::filesystem::path& path);
/// Whole-file replace: write a temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace rbchain
