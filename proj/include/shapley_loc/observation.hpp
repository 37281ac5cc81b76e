#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shapley_loc/errors.hpp"

namespace shapley_loc {

/// Sensor readings at one time instant. Always finite.
class Observation {
 public:
  Observation() = default;

  explicit Observation(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (!std::isfinite(values_[j])) {
        throw NonFiniteValue("observation entry " + std::to_string(j) + " is not finite");
      }
    }
  }

  Observation(std::initializer_list<double> values)
      : Observation(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Returns a copy with entry j replaced. Rejects non-finite values.
  Observation with_value(std::size_t j, double value) const {
    Observation out = *this;
    if (!std::isfinite(value)) {
      throw NonFiniteValue("observation entry " + std::to_string(j) + " is not finite");
    }
    out.values_.at(j) = value;
    return out;
  }

  friend bool operator==(const Observation&, const Observation&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace shapley_loc
