#pragma once

#include <stdexcept>
#include <string>

namespace bbm {

// Invalid run configuration (bad degree, mesh, flag combination, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Wrong use of an API (dimension mismatch, incompatible meshes, ...).
struct UsageError : std::logic_error {
  explicit UsageError(const std::string& msg) : std::logic_error(msg) {}
};

// A direct solver could not factor its matrix.
struct FactorizationError : std::runtime_error {
  explicit FactorizationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failure: relaxation root not found, iteration limit,
// peak tracking lost, NaN in the solution.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be read or written.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bbm
