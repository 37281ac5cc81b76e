#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shapley_loc/attack.hpp"
#include "shapley_loc/experiment.hpp"

namespace shapley_loc {

/// Malformed or invalid config. line() is 0 when the problem is not tied to
/// a single line (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message)
      : std::runtime_error(line != 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One `[experiment.<name>]` block with its user-facing parameters.
/// Sensor numbers are one-based, as in the file.
struct ExperimentParams {
  std::string name;
  double rho = 0.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  AttackKind attack_type = AttackKind::A;
  double am = 0.0;
  std::optional<double> sigma_a;
  std::optional<double> um;
  std::vector<std::size_t> targets{1};
  std::size_t sensor_under_test = 1;
  std::size_t trials = 1;
  double attack_prior = 0.5;
  ThresholdMode threshold_mode = ExactSort{};

  friend bool operator==(const ExperimentParams& a, const ExperimentParams& b);

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Library form. Seed and workers are supplied by the suite runner.
  ExperimentConfig to_config(std::uint64_t seed, unsigned workers = 0) const;

  /// analytic_pe_gaussian for the single-term test, when it applies
  /// (type A attack); nullopt otherwise.
  std::optional<double> analytic_pe() const;
};

enum class OutputFormat { Csv, Markdown };

struct SuiteConfig {
  std::vector<ExperimentParams> experiments;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty means stdout

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;

  /// Unique names and valid entries. Throws ConfigError.
  void validate() const;
};

/// Parses the line-oriented key-value format. Throws ConfigError.
SuiteConfig parse_config_text(std::string_view text);
SuiteConfig parse_config(const std::filesystem::path& path);

/// Canonical text that parse_config_text maps back to an equal SuiteConfig.
std::string to_config_text(const SuiteConfig& suite);

}  // namespace shapley_loc
