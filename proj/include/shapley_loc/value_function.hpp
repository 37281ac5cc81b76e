#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "shapley_loc/coalition.hpp"
#include "shapley_loc/gaussian_model.hpp"
#include "shapley_loc/observation.hpp"

namespace shapley_loc {

/// Characteristic function of the localization game: maps a coalition of
/// sensors (and the current readings) to an anomaly score. Implementations
/// must be deterministic and return 0 for the empty coalition.
class ValueFunction {
 public:
  virtual ~ValueFunction() = default;

  /// Universe size n.
  virtual std::size_t size() const = 0;

  virtual double operator()(Coalition s, const Observation& x) const = 0;
};

/// Negative log marginal density under an unattacked Gaussian model.
/// Holds a reference; the model must outlive it.
class GaussianValue final : public ValueFunction {
 public:
  explicit GaussianValue(const GaussianModel& model) : model_(&model) {}

  std::size_t size() const override { return model_->size(); }
  double operator()(Coalition s, const Observation& x) const override {
    return model_->value(s, x);
  }

 private:
  const GaussianModel* model_;
};

/// v(S) = sum of a_j over members of S, independent of the readings.
class AdditiveValue final : public ValueFunction {
 public:
  explicit AdditiveValue(std::vector<double> coefficients)
      : coefficients_(std::move(coefficients)) {}

  std::size_t size() const override { return coefficients_.size(); }
  double operator()(Coalition s, const Observation&) const override {
    double total = 0.0;
    s.for_each([&](std::size_t j) { total += coefficients_[j]; });
    return total;
  }

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

 private:
  std::vector<double> coefficients_;
};

/// Adapts any callable, e.g. a log-pmf of a discrete model.
class CallableValue final : public ValueFunction {
 public:
  using Fn = std::function<double(Coalition, const Observation&)>;

  CallableValue(std::size_t n, Fn fn) : n_(n), fn_(std::move(fn)) {}

  std::size_t size() const override { return n_; }
  double operator()(Coalition s, const Observation& x) const override { return fn_(s, x); }

 private:
  std::size_t n_;
  Fn fn_;
};

}  // namespace shapley_loc
