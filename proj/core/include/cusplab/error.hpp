#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cusplab {

enum class ErrorKind {
  presentation_mismatch,
  unsupported_peripheral,
  budget_exceeded,
  invalid_depth,
  invalid_metric,
  truncation,
  sampling_starved,
  undefined_tuple,
  invalid_proxy,
  degenerate_pair,
  extension,
  correspondence,
  unsupported,
  coverage_gap,
  invariant_violation,
  parse,
  kind_mismatch,
  invalid_argument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure in the library is reported through this type; the kind
// selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const& message) {
  throw Error(kind, message);
}

}  // namespace cusplab
