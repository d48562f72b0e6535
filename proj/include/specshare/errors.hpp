#pragma once

#include <stdexcept>
#include <string>

namespace specshare {

// A parameter violates a documented precondition (negative density, kappa <= 1, theta < 1, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A function was evaluated outside its mathematical domain (E1 at y <= 0, zero link distance).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature or another numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root search could not bracket the target value.
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specshare
