#include "bigint.hpp"

#include <cctype>

#include "errors.hpp"

namespace rbchain {

std::string to_hex(const BigInt& v) {
  // mpz_get_str emits minimal lowercase digits ("0" for zero).
  char* raw = mpz_get_str(nullptr, 16, v.get_mpz_t());
  std::string out(raw);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(raw, out.size() + 1);
  return out;
}

BigInt from_hex(const std::string& hex) {
  if (hex.empty()) fail(Errc::parse_error, "empty hex string");
  for (char c : hex) {
    if (!std::isxdigit(static_cast<unsigned char>(c)))
      fail(Errc::parse_error, "invalid hex digit in \"" + hex + "\"");
  }
  BigInt v;
  mpz_set_str(v.get_mpz_t(), hex.c_str(), 16);
  return v;
}

bool is_canonical_hex(const std::string& hex) {
  if (hex.empty()) return false;
  for (char c : hex) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) return false;
  }
  return hex == "0" || hex[0] != '0';
}

std::vector<std::uint8_t> to_bytes_be(const BigInt& v) {
  if (v == 0) return {};
  std::vector<std::uint8_t> out((bit_length(v) + 7) / 8);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

BigInt from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigInt v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace rbchain
