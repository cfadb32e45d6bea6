#pragma once

#include <stdexcept>
#include <string>

namespace aetos {

// Violated basis/parameter constraint. The message names the failed
// inequality so optimizers can surface it alongside the penalty.
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or syntactically malformed configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-positive Cholesky pivot: the overlap matrix is numerically singular,
// i.e. the basis contains (near-)linearly dependent functions.
struct LinearDependenceError : std::runtime_error {
  int pivotIndex;
  LinearDependenceError(const std::string& what, int pivot)
      : std::runtime_error(what), pivotIndex(pivot) {}
};

}  // namespace aetos
