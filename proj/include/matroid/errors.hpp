#pragma once

#include <stdexcept>
#include <string>

namespace matroid {

/// A desk-scale size guard or precondition was violated.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// An instance file could not be parsed.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace matroid
