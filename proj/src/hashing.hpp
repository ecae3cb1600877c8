#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rbchain {

/// Registry of supported hash functions for the chain link derivation.
/// SHA-256 is the default; the scheme works with any collision-resistant
/// hash, so the registry is deliberately open to extension.
enum class HashAlg {
  sha256,
  sha512,
};

std::string_view hash_alg_name(HashAlg alg);
std::optional<HashAlg> hash_alg_by_name(std::string_view name);

std::size_t digest_size(HashAlg alg);

std::vector<std::uint8_t> digest(HashAlg alg, std::span<const std::uint8_t> data);

}  // namespace rbchain
