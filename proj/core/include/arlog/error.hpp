#pragma once

#include <stdexcept>
#include <string>

namespace arlog {

/// Raised when an argument lies outside an operation's domain
/// (division by zero, ln of a non-positive value, |rho| out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative method exhausts its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arlog
