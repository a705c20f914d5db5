#pragma once

#include <stdexcept>
#include <string>

namespace formring {

enum class ErrorKind {
  multiplier_invalid,
  invalid_form_parameter,
  invalid_ring,
  invalid_ideal,
  localization_zero,
  constraint,
  singular_matrix,
  pairing,
  precondition,
  certification,
  resource_limit,
  unsupported,
  parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace formring
