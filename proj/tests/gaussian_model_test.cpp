#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "shapley_loc/gaussian_model.hpp"
#include "test_support.hpp"

using namespace shapley_loc;
using shapley_loc::testing::ZeroStream;

namespace {

GaussianModel random_spd_model(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = z(gen);
  }
  Eigen::MatrixXd cov = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd mean(n);
  for (Eigen::Index j = 0; j < mean.size(); ++j) mean(j) = z(gen);
  return {mean, cov};
}

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

}  // namespace

TEST(MakeGaussian, AcceptsTypicalCovariances) {
  Eigen::Matrix2d cov;
  cov << 4, 0, 0, 4;
  const GaussianModel independent(Eigen::Vector2d::Zero(), cov);
  EXPECT_EQ(independent.size(), 2u);
  EXPECT_TRUE(independent.is_diagonal());

  cov << 4, 0.8 * 4, 0.8 * 4, 4;
  const GaussianModel correlated(Eigen::Vector2d::Zero(), cov);
  EXPECT_FALSE(correlated.is_diagonal());
  EXPECT_NEAR(correlated.cholesky()(0, 0), 2.0, 1e-15);
}

TEST(MakeGaussian, RejectsSingularCovariance) {
  Eigen::Matrix2d cov;
  cov << 1, 1, 1, 1;
  EXPECT_THROW(GaussianModel(Eigen::Vector2d::Zero(), cov), NotPositiveDefinite);
  EXPECT_THROW(GaussianModel::bivariate(0, 0, 1, 1, 1.0), NotPositiveDefinite);
  EXPECT_THROW(GaussianModel::bivariate(0, 0, 1, 1, -1.2), NotPositiveDefinite);
}

TEST(MakeGaussian, RejectsBadShapes) {
  EXPECT_THROW(GaussianModel(Eigen::Vector3d::Zero(), Eigen::Matrix2d::Identity()),
               DimensionMismatch);
  EXPECT_THROW(GaussianModel(Eigen::VectorXd::Zero(25), Eigen::MatrixXd::Identity(25, 25)),
               DimensionMismatch);
  Eigen::Matrix2d asym;
  asym << 2, 0.5, 0.4, 2;
  EXPECT_THROW(GaussianModel(Eigen::Vector2d::Zero(), asym), NotPositiveDefinite);
  Eigen::Matrix2d nan_cov = Eigen::Matrix2d::Identity();
  nan_cov(0, 0) = std::nan("");
  EXPECT_THROW(GaussianModel(Eigen::Vector2d::Zero(), nan_cov), NonFiniteValue);
}

TEST(Sample, ZeroNoiseReturnsMean) {
  const auto model = GaussianModel::independent({5.0, 7.0}, {1.0, 1.0});
  ZeroStream zeros;
  EXPECT_EQ(model.sample(zeros), (Observation{5.0, 7.0}));
}

TEST(Sample, DeterministicGivenStream) {
  const auto model = GaussianModel::bivariate(1, -1, 2, 3, 0.3);
  SplitMixStream a(99);
  SplitMixStream b(99);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(model.sample(a), model.sample(b));
}

TEST(Sample, MomentsMatchModelWithinFourStandardErrors) {
  constexpr std::size_t kDraws = 1'000'000;
  const double sigma1 = 2.0;
  const double sigma2 = 1.5;
  const double rho = 0.5;
  const auto model = GaussianModel::bivariate(0.5, -1.0, sigma1, sigma2, rho);
  SplitMixStream rng(2024);

  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
  for (std::size_t k = 0; k < kDraws; ++k) {
    const auto x = model.sample(rng);
    s1 += x[0];
    s2 += x[1];
    s11 += x[0] * x[0];
    s22 += x[1] * x[1];
    s12 += x[0] * x[1];
  }
  const double m = static_cast<double>(kDraws);
  const double m1 = s1 / m, m2 = s2 / m;
  const double c11 = s11 / m - m1 * m1;
  const double c22 = s22 / m - m2 * m2;
  const double c12 = s12 / m - m1 * m2;

  EXPECT_NEAR(m1, 0.5, 4 * sigma1 / std::sqrt(m));
  EXPECT_NEAR(m2, -1.0, 4 * sigma2 / std::sqrt(m));
  // Var of a sample covariance entry is (S_ii S_jj + S_ij^2) / m for Gaussians.
  const double v11 = sigma1 * sigma1, v22 = sigma2 * sigma2, v12 = rho * sigma1 * sigma2;
  EXPECT_NEAR(c11, v11, 4 * std::sqrt(2 * v11 * v11 / m));
  EXPECT_NEAR(c22, v22, 4 * std::sqrt(2 * v22 * v22 / m));
  EXPECT_NEAR(c12, v12, 4 * std::sqrt((v11 * v22 + v12 * v12) / m));
  EXPECT_NEAR(c12 / std::sqrt(c11 * c22), rho, 0.005);
}

TEST(Sample, IndependentMeanWithinStandardErrorBound) {
  Eigen::Matrix2d cov;
  cov << 4, 0, 0, 4;
  const GaussianModel model(Eigen::Vector2d::Zero(), cov);
  SplitMixStream rng(7);
  double s1 = 0, s2 = 0;
  for (int k = 0; k < 1'000'000; ++k) {
    const auto x = model.sample(rng);
    s1 += x[0];
    s2 += x[1];
  }
  EXPECT_NEAR(s1 / 1e6, 0.0, 3 * (2.0 / 1000));
  EXPECT_NEAR(s2 / 1e6, 0.0, 3 * (2.0 / 1000));
}

TEST(MarginalLogDensity, StandardNormalAtMode) {
  const auto model = GaussianModel::independent({0.0}, {1.0});
  EXPECT_NEAR(model.marginal_log_density(Coalition::of(1, {0}), Observation{0.0}),
              -0.5 * std::log(2 * std::numbers::pi), 1e-14);
  EXPECT_NEAR(model.marginal_log_density(Coalition::of(1, {0}), Observation{0.0}), -0.91894,
              5e-6);
}

TEST(MarginalLogDensity, CorrelatedPairAtMean) {
  // -ln(2 pi sqrt(0.75)), evaluated independently: -1.694036030183455.
  const auto model = GaussianModel::bivariate(0, 0, 1, 1, 0.5);
  const double got = marginal_log_density(model, Coalition::full(2), Observation{0.0, 0.0});
  EXPECT_NEAR(got, -1.694036030183455, 1e-12);
  const double direct =
      std::log(shapley_loc::testing::bivariate_pdf(0, 0, 0, 0, 1, 1, 0.5));
  EXPECT_NEAR(got, direct, 1e-12);
}

TEST(MarginalLogDensity, IndependenceFactorizes) {
  const auto model = GaussianModel::independent({0.3, -2.0}, {1.5, 0.7});
  const Observation x{1.1, -1.4};
  const double joint = model.marginal_log_density(Coalition::full(2), x);
  const double sum = model.marginal_log_density(Coalition::of(2, {0}), x) +
                     model.marginal_log_density(Coalition::of(2, {1}), x);
  EXPECT_NEAR(joint, sum, 1e-12);
}

TEST(MarginalLogDensity, MatchesTextbookFormulaOnEverySubset) {
  std::mt19937_64 gen(11);
  // Sizes on both sides of the precomputed-factor cutoff.
  for (const std::size_t n : {1u, 3u, 6u, 11u, 13u}) {
    const auto model = random_spd_model(n, gen);
    std::normal_distribution<double> z;
    std::vector<double> xs(n);
    for (auto& v : xs) v = z(gen);
    const Observation x(xs);
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << n) - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const Coalition s(n, pick(gen));
      std::vector<std::size_t> idx;
      s.for_each([&](std::size_t j) { idx.push_back(j); });
      std::vector<double> sub_x, sub_mu;
      std::vector<std::vector<double>> sub_cov(idx.size(), std::vector<double>(idx.size()));
      const auto full = to_rows(model.cov());
      for (std::size_t r = 0; r < idx.size(); ++r) {
        sub_x.push_back(xs[idx[r]]);
        sub_mu.push_back(model.mean()(static_cast<Eigen::Index>(idx[r])));
        for (std::size_t c = 0; c < idx.size(); ++c) sub_cov[r][c] = full[idx[r]][idx[c]];
      }
      const double expected = shapley_loc::testing::reference_log_density(sub_x, sub_mu, sub_cov);
      EXPECT_NEAR(model.marginal_log_density(s, x), expected, 1e-9 * (1 + std::abs(expected)))
          << "n=" << n << " bits=" << s.bits();
    }
  }
}

TEST(MarginalLogDensity, EmptyCoalitionIsAnError) {
  const auto model = GaussianModel::independent({0.0, 0.0}, {1.0, 1.0});
  EXPECT_THROW(model.marginal_log_density(Coalition::empty(2), Observation{0.0, 0.0}),
               EmptyCoalition);
  EXPECT_THROW(model.marginal_log_density(Coalition::full(2), Observation{0.0}),
               DimensionMismatch);
  EXPECT_THROW(model.marginal_log_density(Coalition::full(3), Observation{0.0, 0.0}),
               DimensionMismatch);
}

TEST(MarginalLogDensity, IntegratingOutASensorGivesTheMarginal) {
  for (const double rho : {0.0, 0.5, -0.8}) {
    const double mu1 = 0.4, mu2 = -1.0, s1 = 1.3, s2 = 2.0;
    const auto model = GaussianModel::bivariate(mu1, mu2, s1, s2, rho);
    const auto joint = [&](double a, double b) {
      return std::exp(-model.value(Coalition::full(2), Observation{a, b}));
    };
    for (int p = 0; p < 10; ++p) {
      const double x1 = mu1 + s1 * (-2.0 + 4.0 * p / 9.0);
      // Composite Simpson over mu2 +- 6 sigma2.
      constexpr int kIntervals = 4000;
      const double lo = mu2 - 6 * s2, hi = mu2 + 6 * s2;
      const double h = (hi - lo) / kIntervals;
      double acc = joint(x1, lo) + joint(x1, hi);
      for (int k = 1; k < kIntervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * joint(x1, lo + k * h);
      const double integral = acc * h / 3.0;
      const double marginal =
          std::exp(model.marginal_log_density(Coalition::of(2, {0}), Observation{x1, 0.0}));
      EXPECT_NEAR(integral / marginal, 1.0, 1e-6) << "rho=" << rho << " x1=" << x1;
    }
  }
}

TEST(Value, EmptyCoalitionIsZeroAndOtherwiseNegatedLogDensity) {
  const auto model = GaussianModel::independent({0.0}, {1.0});
  EXPECT_EQ(value(model, Coalition::empty(1), Observation{3.0}), 0.0);
  EXPECT_NEAR(value(model, Coalition::full(1), Observation{0.0}), 0.91894, 5e-6);
}

TEST(Value, AdditiveOverDisjointSetsUnderIndependence) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  std::normal_distribution<double> z(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 9;
    std::vector<double> means(n), sigmas(n), xs(n);
    for (std::size_t j = 0; j < n; ++j) {
      means[j] = z(gen);
      sigmas[j] = u(gen);
      xs[j] = z(gen);
    }
    const auto model = GaussianModel::independent(means, sigmas);
    const Observation x(xs);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
    const std::uint64_t a = pick(gen);
    const std::uint64_t b = pick(gen) & ~a;
    const double joint = model.value(Coalition(n, a | b), x);
    const double split = model.value(Coalition(n, a), x) + model.value(Coalition(n, b), x);
    EXPECT_NEAR(joint, split, 1e-10);
  }
}

TEST(Value, DecreasesAsDensityIncreases) {
  const auto model = GaussianModel::bivariate(0, 0, 1.0, 2.0, 0.6);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Observation x{z(gen), z(gen)};
    const Observation y{z(gen), z(gen)};
    const double fx = shapley_loc::testing::bivariate_pdf(x[0], x[1], 0, 0, 1.0, 2.0, 0.6);
    const double fy = shapley_loc::testing::bivariate_pdf(y[0], y[1], 0, 0, 1.0, 2.0, 0.6);
    if (fx == fy) continue;
    EXPECT_EQ(fx > fy, model.value(Coalition::full(2), x) < model.value(Coalition::full(2), y));
  }
}
