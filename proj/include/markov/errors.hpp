#pragma once

#include <stdexcept>
#include <string>

namespace markov {

/// Argument outside an operation's mathematical domain (p < 1, nonpositive
/// fit value, zero denominator, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested rule or expansion exceeds a configured size limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gram matrix or its square-root factor is numerically singular; reduce
/// the degree.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iteration that should converge did not. Always an implementation bug
/// or a badly posed input, never a recoverable condition.
class ConvergenceError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace markov
