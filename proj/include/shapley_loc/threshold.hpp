#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace shapley_loc {

/// Scores of one Monte Carlo trial for the sensor under test.
struct ScorePair {
  double phi_score = 0.0;  // Shapley value
  double v_score = 0.0;    // single-term v({i})
  bool attacked = false;   // ground truth for the sensor under test

  friend bool operator==(const ScorePair&, const ScorePair&) = default;
};

enum class Statistic { Shapley, SingleTerm };

std::string_view to_string(Statistic s) noexcept;

/// Operating point of the test "declare an anomaly iff score > threshold"
/// at the error-minimizing threshold.
struct ErrorRateReport {
  Statistic statistic = Statistic::Shapley;
  double threshold = 0.0;
  /// Unconditional empirical error fraction (misses + false alarms) / trials.
  double pe = 0.0;
  /// 1.96 * sqrt(pe (1 - pe) / trials).
  double ci_halfwidth = 0.0;
  std::size_t trials = 0;
  std::size_t attacked = 0;
  std::size_t misses = 0;
  std::size_t false_alarms = 0;
  /// Miss rate plus false-alarm rate at the same threshold.
  double pe_rate_sum = 0.0;
};

/// Normal-approximation 95% half-width, 1.96 sqrt(pe (1 - pe) / m).
double binomial_ci(double pe, std::size_t m);

/// Scans every midpoint between consecutive distinct scores plus the two
/// infinite sentinels; ties go to the smallest threshold.
/// Throws DegenerateLabels when either class is empty.
ErrorRateReport optimize_threshold_exact(std::span<const ScorePair> pairs, Statistic statistic);

/// Scans `steps` equally spaced thresholds over [lo, hi]. Ties go to the
/// smallest threshold. Throws OutOfRange unless lo < hi and steps >= 2.
ErrorRateReport optimize_threshold_grid(std::span<const ScorePair> pairs, Statistic statistic,
                                        double lo, double hi, std::size_t steps);

/// Minimum probability of error of the single-term test on one sensor with
/// readings N(0, sigma^2) when unattacked and N(am, sigma^2) when attacked,
/// with attack probability attack_prior. The test v > tau reduces to
/// |x| > t; the minimum over t in [0, |am| + 8 sigma] is found by golden
/// section to 1e-10.
double analytic_pe_gaussian(double sigma, double am, double attack_prior);

}  // namespace shapley_loc
