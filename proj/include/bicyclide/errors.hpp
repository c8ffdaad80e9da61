#pragma once

#include <stdexcept>
#include <string>

namespace bicyclide {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Ordering or placement condition required by an expansion is violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation too close to a pole or a singular axis segment.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative procedure failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bicyclide
