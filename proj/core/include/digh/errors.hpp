#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace digh {

// Bad user input: malformed files, out-of-range parameters, graphs that do not
// meet a precondition. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DanglingNodeError : public InputError {
 public:
  explicit DanglingNodeError(std::size_t vertex)
      : InputError("vertex " + std::to_string(vertex) + " has no out-edges"), vertex_(vertex) {}
  std::size_t vertex() const { return vertex_; }

 private:
  std::size_t vertex_;
};

class ConnectivityError : public InputError {
 public:
  using InputError::InputError;
};

// Numerical failure on valid input. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : NumericalError(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

class DegenerateStationaryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonDiagonalizableError : public NumericalError {
 public:
  NonDiagonalizableError(const std::string& what, double condition, double residual)
      : NumericalError(what), condition_(condition), residual_(residual) {}
  double condition() const { return condition_; }
  double residual() const { return residual_; }

 private:
  double condition_;
  double residual_;
};

class NoConjugatePairError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptyBasisError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularTransformError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DesignError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace digh
