#pragma once

#include <stdexcept>
#include <string>

namespace projave {

// Argument outside the mathematical domain of an operation (negative
// dimension, p >= n, singular matrix, origin outside a body, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A quadrature rule produced a non-finite value or failed to converge.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that is well-formed but degenerate for the requested quantity,
// e.g. a vanishing inner integral on a sampled subspace.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed fixtures, configs or integrand declarations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace projave
