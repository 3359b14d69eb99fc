#pragma once

#include <stdexcept>
#include <string>

namespace monolap {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// combined eigenvalue of a kron factorization is zero
struct SingularOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoFeasibleAssignment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace monolap
