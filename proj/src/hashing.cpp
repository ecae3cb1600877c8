#include "hashing.hpp"

#include <openssl/evp.h>

#include "errors.hpp"

namespace rbchain {

namespace {

const EVP_MD* evp_md(HashAlg alg) {
  switch (alg) {
    case HashAlg::sha256: return EVP_sha256();
    case HashAlg::sha512: return EVP_sha512();
  }
  fail(Errc::invalid_argument, "unknown hash algorithm");
}

}  // namespace

std::string_view hash_alg_name(HashAlg alg) {
  switch (alg) {
    case HashAlg::sha256: return "sha256";
    case HashAlg::sha512: return "sha512";
  }
  return "unknown";
}

std::optional<HashAlg> hash_alg_by_name(std::string_view name) {
  if (name == "sha256") return HashAlg::sha256;
  if (name == "sha512") return HashAlg::sha512;
  return std::nullopt;
}

std::size_t digest_size(HashAlg alg) {
  return static_cast<std::size_t>(EVP_MD_size(evp_md(alg)));
}

std::vector<std::uint8_t> digest(HashAlg alg, std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, evp_md(alg), nullptr) != 1)
    fail(Errc::io_error, "digest computation failed");
  out.resize(len);
  return out;
}

}  // namespace rbchain
