#pragma once

#include <stdexcept>
#include <string>

namespace shapley_loc {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariance is not symmetric positive definite (e.g. |rho| >= 1).
class NotPositiveDefinite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteValue : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyCoalition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Exact enumeration refused because 2^n coalitions is over budget.
class UniverseTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Truncated Shapley called with a predicate that keeps no coalition.
class EmptyKeptSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Threshold optimization needs both attacked and unattacked samples.
class DegenerateLabels : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidAttack : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace shapley_loc
