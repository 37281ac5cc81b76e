#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "shapley_loc/attack.hpp"
#include "shapley_loc/gaussian_model.hpp"
#include "shapley_loc/threshold.hpp"

namespace shapley_loc {

struct ExactSort {
  friend bool operator==(const ExactSort&, const ExactSort&) = default;
};

struct GridSearch {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t steps = 2;

  friend bool operator==(const GridSearch&, const GridSearch&) = default;
};

using ThresholdMode = std::variant<ExactSort, GridSearch>;

/// One paired Monte Carlo experiment. Sensor indices are zero-based here.
struct ExperimentConfig {
  GaussianModel model;
  AttackSpec attack;
  std::size_t sensor_under_test = 0;
  std::size_t trials = 1;
  double attack_prior = 0.5;
  std::uint64_t seed = 0;
  ThresholdMode threshold_mode = ExactSort{};
  /// Worker threads for the trial loop; 0 picks hardware concurrency.
  /// Results do not depend on it.
  unsigned workers = 0;

  /// Throws std::invalid_argument / OutOfRange on a bad configuration.
  void validate() const;
};

/// Draws trial `trial_index` from its own stream derive_seed(seed, index):
/// an unattacked sample, then the attack coin, then the attack variates.
ScorePair run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

/// All trials in index order, computed on config.workers threads.
std::vector<ScorePair> collect_scores(const ExperimentConfig& config);

/// Optimizes the threshold of one statistic under the config's mode.
ErrorRateReport optimize_threshold(std::span<const ScorePair> pairs, Statistic statistic,
                                   const ThresholdMode& mode);

struct ExperimentResult {
  ErrorRateReport shapley;
  ErrorRateReport single_term;
  double attack_prior = 0.5;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace shapley_loc
