#include "shapley_loc/experiment.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

#include "shapley_loc/shapley.hpp"
#include "shapley_loc/value_function.hpp"

namespace shapley_loc {

void ExperimentConfig::validate() const {
  if (trials < 1) throw OutOfRange("trials must be at least 1");
  if (!(attack_prior > 0.0 && attack_prior < 1.0)) {
    throw OutOfRange("attack_prior must lie strictly between 0 and 1");
  }
  if (sensor_under_test >= model.size()) {
    throw OutOfRange("sensor_under_test " + std::to_string(sensor_under_test + 1) +
                     " outside the model's " + std::to_string(model.size()) + " sensors");
  }
  if (attack.targets().universe() != model.size()) {
    throw DimensionMismatch("attack targets do not match the model's sensor count");
  }
  if (model.size() > kMaxExactUniverse) {
    throw UniverseTooLarge("experiments compute exact Shapley values; model too large");
  }
  if (const auto* grid = std::get_if<GridSearch>(&threshold_mode)) {
    if (!(grid->lo < grid->hi)) throw OutOfRange("grid_lo must be below grid_hi");
    if (grid->steps < 2) throw OutOfRange("grid_steps must be at least 2");
  }
}

ScorePair run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  auto rng = SplitMixStream::for_trial(config.seed, trial_index);
  Observation x = config.model.sample(rng);
  const bool attacked = rng.uniform01() < config.attack_prior;
  if (attacked) x = apply_attack(config.attack, x, rng);

  const std::size_t i = config.sensor_under_test;
  const GaussianValue v(config.model);
  const ShapleyResult shap = all_shapley(v, x);

  ScorePair pair;
  pair.phi_score = shap.phi[i];
  pair.v_score = v(Coalition::empty(config.model.size()).with(i), x);
  pair.attacked = attacked && config.attack.targets().contains(i);
  return pair;
}

std::vector<ScorePair> collect_scores(const ExperimentConfig& config) {
  config.validate();
  std::vector<ScorePair> pairs(config.trials);

  unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
  workers = std::max(1U, workers);
  const std::size_t chunk = (config.trials + workers - 1) / workers;

  std::vector<std::exception_ptr> failures(workers);
  const auto work = [&](unsigned w) {
    try {
      const std::size_t begin = std::min(config.trials, w * chunk);
      const std::size_t end = std::min(config.trials, begin + chunk);
      for (std::size_t j = begin; j < end; ++j) pairs[j] = run_trial(config, j);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return pairs;
}

ErrorRateReport optimize_threshold(std::span<const ScorePair> pairs, Statistic statistic,
                                   const ThresholdMode& mode) {
  if (const auto* grid = std::get_if<GridSearch>(&mode)) {
    return optimize_threshold_grid(pairs, statistic, grid->lo, grid->hi, grid->steps);
  }
  return optimize_threshold_exact(pairs, statistic);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto pairs = collect_scores(config);
  ExperimentResult result{
      optimize_threshold(pairs, Statistic::Shapley, config.threshold_mode),
      optimize_threshold(pairs, Statistic::SingleTerm, config.threshold_mode),
      config.attack_prior,
  };
  return result;
}

}  // namespace shapley_loc
