#include "frontlab/error.hpp"

namespace frontlab {

Error::Error(ErrorKind kind, std::string invariant, const std::string& message)
    : std::runtime_error(invariant + ": " + message), kind_(kind), invariant_(std::move(invariant)) {}

void fail(ErrorKind kind, const std::string& invariant, const std::string& message) {
  throw Error(kind, invariant, message);
}

}  // namespace frontlab
