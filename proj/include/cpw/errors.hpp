#pragma once

#include <stdexcept>
#include <string>

namespace cpw {

/// Operator fails the positivity test for its principal symbol.
class NonEllipticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's admissible range (window, sign, size).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative or grid-based computation did not settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural identity that must hold exactly was violated.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpw
