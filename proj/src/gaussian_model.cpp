#include "shapley_loc/gaussian_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

namespace shapley_loc {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2 pi)

using BoundedVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, GaussianModel::kMaxSensors, 1>;
using BoundedMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0,
                                    GaussianModel::kMaxSensors, GaussianModel::kMaxSensors>;

// Centered sub-vector x_S - mu_S in member order.
BoundedVector centered(const Eigen::VectorXd& mean, Coalition s, const Observation& x) {
  BoundedVector d(static_cast<Eigen::Index>(s.size()));
  Eigen::Index k = 0;
  s.for_each([&](std::size_t j) {
    d(k++) = x[j] - mean(static_cast<Eigen::Index>(j));
  });
  return d;
}

}  // namespace

GaussianModel::GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto n = mean_.size();
  if (n == 0) throw DimensionMismatch("model needs at least one sensor");
  if (static_cast<std::size_t>(n) > kMaxSensors) {
    throw DimensionMismatch("model supports at most " + std::to_string(kMaxSensors) + " sensors");
  }
  if (cov_.rows() != n || cov_.cols() != n) {
    throw DimensionMismatch("covariance is " + std::to_string(cov_.rows()) + "x" +
                            std::to_string(cov_.cols()) + " but mean has " + std::to_string(n) +
                            " entries");
  }
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw NonFiniteValue("model parameters must be finite");
  }

  const double scale = cov_.cwiseAbs().maxCoeff();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r + 1; c < n; ++c) {
      if (std::abs(cov_(r, c) - cov_(c, r)) > 1e-12 * scale) {
        throw NotPositiveDefinite("covariance is not symmetric");
      }
    }
  }
  // Symmetrize so both triangles agree exactly.
  cov_ = (0.5 * (cov_ + cov_.transpose())).eval();

  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("covariance is not positive definite");
  }
  full_lower_ = llt.matrixL();
  diagonal_ = cov_.isDiagonal(0.0);

  const auto sensors = static_cast<std::size_t>(n);
  if (sensors <= kCachedSensors) {
    const std::uint64_t count = std::uint64_t{1} << sensors;
    marginals_.resize(count);
    for (std::uint64_t bits = 1; bits < count; ++bits) {
      marginals_[bits] = factor(cov_, Coalition(sensors, bits));
    }
  }
}

GaussianModel GaussianModel::bivariate(double mu1, double mu2, double sigma1, double sigma2,
                                       double rho) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
    throw NotPositiveDefinite("standard deviations must be positive");
  }
  if (!(std::abs(rho) < 1.0)) throw NotPositiveDefinite("correlation out of range");
  Eigen::Vector2d mean(mu1, mu2);
  Eigen::Matrix2d cov;
  const double c = rho * sigma1 * sigma2;
  cov << sigma1 * sigma1, c, c, sigma2 * sigma2;
  return {mean, cov};
}

GaussianModel GaussianModel::independent(std::vector<double> means, std::vector<double> sigmas) {
  if (means.size() != sigmas.size()) {
    throw DimensionMismatch("means and sigmas differ in length");
  }
  const auto n = static_cast<Eigen::Index>(means.size());
  Eigen::VectorXd mean = Eigen::Map<const Eigen::VectorXd>(means.data(), n);
  Eigen::VectorXd var(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(sigmas[static_cast<std::size_t>(j)] > 0.0)) {
      throw NotPositiveDefinite("standard deviations must be positive");
    }
    var(j) = sigmas[static_cast<std::size_t>(j)] * sigmas[static_cast<std::size_t>(j)];
  }
  return {mean, var.asDiagonal().toDenseMatrix()};
}

GaussianModel::Marginal GaussianModel::factor(const Eigen::MatrixXd& cov, Coalition s) {
  const auto k = static_cast<Eigen::Index>(s.size());
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(k));
  s.for_each([&](std::size_t j) { idx.push_back(static_cast<Eigen::Index>(j)); });

  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = cov(idx[r], idx[c]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  // Principal sub-matrices of a positive definite matrix are positive definite.
  Marginal m;
  m.lower = llt.matrixL();
  m.log_norm = -m.lower.diagonal().array().log().sum() - static_cast<double>(k) * kHalfLog2Pi;
  return m;
}

void GaussianModel::check_coalition(Coalition s, const Observation& x) const {
  if (x.size() != size()) {
    throw DimensionMismatch("observation has " + std::to_string(x.size()) +
                            " entries but model has " + std::to_string(size()));
  }
  if (s.universe() != size()) {
    throw DimensionMismatch("coalition universe " + std::to_string(s.universe()) +
                            " does not match model size " + std::to_string(size()));
  }
}

Observation GaussianModel::sample(RandomStream& rng) const {
  const auto n = mean_.size();
  BoundedVector z(n);
  for (Eigen::Index j = 0; j < n; ++j) z(j) = rng.standard_normal();
  BoundedVector draw = mean_;
  draw.noalias() += full_lower_.triangularView<Eigen::Lower>() * z;
  return Observation(std::vector<double>(draw.data(), draw.data() + n));
}

double GaussianModel::marginal_log_density(Coalition s, const Observation& x) const {
  check_coalition(s, x);
  if (s.is_empty()) throw EmptyCoalition("marginal density of the empty coalition");

  BoundedVector d = centered(mean_, s, x);
  if (!marginals_.empty()) {
    const Marginal& m = marginals_[s.bits()];
    m.lower.triangularView<Eigen::Lower>().solveInPlace(d);
    return m.log_norm - 0.5 * d.squaredNorm();
  }

  const auto k = d.size();
  BoundedMatrix sub(k, k);
  Eigen::Index r = 0;
  s.for_each([&](std::size_t a) {
    Eigen::Index c = 0;
    s.for_each([&](std::size_t b) {
      sub(r, c++) = cov_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    });
    ++r;
  });
  Eigen::LLT<Eigen::Ref<BoundedMatrix>> llt(sub);
  llt.matrixL().solveInPlace(d);
  const double log_det_half = sub.diagonal().array().log().sum();
  return -log_det_half - static_cast<double>(k) * kHalfLog2Pi - 0.5 * d.squaredNorm();
}

double GaussianModel::value(Coalition s, const Observation& x) const {
  check_coalition(s, x);
  if (s.is_empty()) return 0.0;
  return -marginal_log_density(s, x);
}

double marginal_log_density(const GaussianModel& model, Coalition s, const Observation& x) {
  return model.marginal_log_density(s, x);
}

double value(const GaussianModel& model, Coalition s, const Observation& x) {
  return model.value(s, x);
}

}  // namespace shapley_loc
