#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ssusy {

enum class ErrorCode {
  InvalidInput,
  GridTooSmall,
  NodeInDomain,
  SuperpotentialNode,
  SingularInDomain,
  UnderResolved,
  ConvergenceFailure,
  LengthMismatch,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Error(ErrorCode code, const std::string& what, double location)
      : std::runtime_error(what), code_(code), location_(location) {}

  ErrorCode code() const noexcept { return code_; }
  // Position on the x axis the error refers to (node, stalled level, ...).
  std::optional<double> location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::optional<double> location_;
};

}  // namespace ssusy
