#pragma once

#include <stdexcept>
#include <string>

namespace rbchain {

enum class Errc {
  invalid_argument,
  invalid_modulus,
  undefined_gcd,
  not_invertible,
  padding_exhausted,
  oversize_content,
  invalid_suffix,
  exponent_too_small,
  must_branch,
  must_append,
  not_found,
  leaf_redaction,
  unredactable_position,
  key_search_exhausted,
  parse_error,
  integrity_error,
  io_error,
};

/// Library-wide exception carrying a machine-readable error code.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rbchain
