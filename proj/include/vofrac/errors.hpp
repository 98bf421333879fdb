#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vofrac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A documented precondition of an operation does not hold
/// (fast-path requirements, mesh case vs. order mismatch, nesting).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative series or sum ran out of terms before reaching tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for failures of the nodal Newton iteration.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t node, double residual)
      : std::runtime_error(what), node_(node), residual_(residual) {}

  std::size_t node() const noexcept { return node_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t node_;
  double residual_;
};

class NewtonDiverged : public SolverError {
 public:
  using SolverError::SolverError;
};

class SingularJacobian : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace vofrac
