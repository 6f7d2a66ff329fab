#pragma once

#include <stdexcept>
#include <string>

namespace isolab {

// Operand shapes disagree (variable counts, vector lengths, algebra tags).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input violates a documented precondition (e.g. non-homogeneous polynomial).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A constructed object failed its own postcondition check.
class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Declared data is inconsistent with derived data (e.g. non-integral multiplicities).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative numerical procedure failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point is (numerically) focal: gradient degenerate or parallel map singular.
class FocalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigenvalue clustering is not stable under the configured tolerance.
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isolab
