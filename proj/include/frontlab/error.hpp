#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

/// Category of a failure, used by the CLI to pick an exit code.
enum class ErrorKind {
  invalid_argument,  ///< a caller violated a documented precondition
  numerical,         ///< an iterative method failed to converge or bracket
  configuration,     ///< malformed or unknown configuration input
  assertion,         ///< a checked invariant of a result did not hold
};

/// Every failure raised by the library. `invariant()` names the violated
/// contract in a short machine-friendly form (e.g. "violates (B3)").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string invariant, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  ErrorKind kind_;
  std::string invariant_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& invariant, const std::string& message);

inline void require(bool condition, const std::string& invariant, const std::string& message) {
  if (!condition) fail(ErrorKind::invalid_argument, invariant, message);
}

}  // namespace frontlab
