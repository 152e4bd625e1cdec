#pragma once
#include <stdexcept>
#include <string>

namespace cnoidal {

// Argument outside the mathematical domain of an operation (CLI exit code 2).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Iteration or integration failed to reach tolerance (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cnoidal
