#pragma once

#include <stdexcept>
#include <string>

namespace fingraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes disagree: vector length vs node count, non-square matrix, ...
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be used as given (non-finite values, zero-variance
// columns, malformed files).
class DataError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// A solver produced a non-finite iterate.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(int iteration, const std::string& what)
      : NumericalError("diverged at iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

}  // namespace fingraph
