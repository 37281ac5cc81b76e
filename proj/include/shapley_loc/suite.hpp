#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "shapley_loc/config.hpp"
#include "shapley_loc/experiment.hpp"

namespace shapley_loc {

/// Columns of the result table, in output order.
inline const std::vector<std::string> kResultColumns = {
    "name", "rho",    "sigma1", "sigma2", "attack_type", "sigma_a", "AM",      "UM",     "M",
    "prior", "Pe_v", "Pe_phi", "CI_v",   "CI_phi",      "tau_v",   "tau_phi", "analytic_Pe",
};

/// Extra columns appended when RunOptions::rate_sum is set.
inline const std::vector<std::string> kRateSumColumns = {"Pe_sum_v", "Pe_sum_phi"};

struct RunOptions {
  unsigned workers = 0;
  /// Emit a "# generated: <UTC time>" header line.
  bool timestamp = true;
  bool rate_sum = false;
  /// Per-experiment progress lines; null for silence.
  std::ostream* progress = nullptr;
};

struct SuiteRow {
  ExperimentParams params;
  std::optional<ExperimentResult> result;  // empty when the experiment failed
  std::optional<double> analytic_pe;
  std::string error;
};

/// Seed of experiment `index` within a suite.
std::uint64_t experiment_seed(std::uint64_t suite_seed, std::size_t index);

/// Runs every experiment in order and writes the table to `out`, one row
/// per experiment as it completes. A failing experiment writes a FAILED
/// row and the suite carries on. Returns 0, or 2 if any experiment failed.
int run_suite(const SuiteConfig& suite, std::ostream& out, const RunOptions& options = {},
              std::vector<SuiteRow>* rows = nullptr);

/// Independent sensors, sigma in {1, 1.5, 2} crossed with the four attack
/// settings A(AM=10), B(sigma_a=0.1), B(sigma_a=1), C(AM=9.95, UM=0.1).
SuiteConfig table1_preset(std::size_t trials, std::uint64_t seed);

/// sigma1 = sigma2 = 2, rho in {±0.2, ±0.5, ±0.8}, attack A with AM=1.
SuiteConfig table2_preset(std::size_t trials, std::uint64_t seed);

}  // namespace shapley_loc
