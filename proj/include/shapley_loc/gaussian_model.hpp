#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "shapley_loc/coalition.hpp"
#include "shapley_loc/observation.hpp"
#include "shapley_loc/random.hpp"

namespace shapley_loc {

/// Multivariate Gaussian model of the unattacked sensor readings.
///
/// Immutable after construction. Construction factors the covariance and,
/// for small sensor counts, the covariance of every coalition, so the
/// marginal log-density of any subset is a triangular solve. Instances may
/// be shared read-only between threads.
class GaussianModel {
 public:
  /// Largest supported sensor count.
  static constexpr std::size_t kMaxSensors = 24;
  /// Coalition factors are precomputed up to this many sensors and
  /// recomputed on demand above it.
  static constexpr std::size_t kCachedSensors = 10;

  /// Throws DimensionMismatch, NotPositiveDefinite or NonFiniteValue.
  GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  /// The two-sensor model with standard deviations sigma1, sigma2 and
  /// correlation rho.
  static GaussianModel bivariate(double mu1, double mu2, double sigma1, double sigma2, double rho);

  /// Independent sensors with the given means and standard deviations.
  static GaussianModel independent(std::vector<double> means, std::vector<double> sigmas);

  std::size_t size() const noexcept { return static_cast<std::size_t>(mean_.size()); }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& cov() const noexcept { return cov_; }
  /// Lower Cholesky factor of the full covariance.
  const Eigen::MatrixXd& cholesky() const noexcept { return full_lower_; }
  bool is_diagonal() const noexcept { return diagonal_; }

  /// One draw of the joint pdf: mean + L z with z from rng.standard_normal().
  Observation sample(RandomStream& rng) const;

  /// ln f_S(x_S) for the marginal over coalition s. Throws EmptyCoalition.
  double marginal_log_density(Coalition s, const Observation& x) const;

  /// Negative log-density of the coalition's readings; 0 for the empty set.
  double value(Coalition s, const Observation& x) const;

 private:
  struct Marginal {
    Eigen::MatrixXd lower;
    // -sum(log L_jj) - k/2 log(2 pi)
    double log_norm = 0.0;
  };

  static Marginal factor(const Eigen::MatrixXd& cov, Coalition s);
  void check_coalition(Coalition s, const Observation& x) const;

  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd full_lower_;
  bool diagonal_ = false;
  std::vector<Marginal> marginals_;  // indexed by coalition bits, empty if not cached
};

/// Convenience forms of the member operations.
double marginal_log_density(const GaussianModel& model, Coalition s, const Observation& x);
double value(const GaussianModel& model, Coalition s, const Observation& x);

}  // namespace shapley_loc
