#pragma once

#include <stdexcept>
#include <string>

namespace nomafbl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Quadrature non-convergence or a result that violates an internal
/// consistency bound (e.g. a probability outside [0,1] beyond the clamp).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Every point of a sweep carried a hard-error flag.
class NoFeasiblePoint : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace nomafbl
