#pragma once

#include <stdexcept>
#include <string>

namespace costplex {

// Invalid configuration or arguments (bad sizes, too few sweep points, ...).
// The CLI maps this to exit status 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of an operation (empty distribution,
// disconnected graph, zero separation, ...). CLI exit status 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Broken internal invariant, e.g. a compression round-trip mismatch.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace costplex
