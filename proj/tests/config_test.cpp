#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "shapley_loc/config.hpp"

using namespace shapley_loc;

namespace {

constexpr const char* kMinimal = R"(
# one experiment, everything else defaulted
[experiment.basic]
sigma1 = 2.0
sigma2 = 2.0
attack_type = A
am = 10
trials = 1000
)";

std::string expect_config_error(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    if (line != nullptr) *line = e.line();
    return e.what();
  }
  ADD_FAILURE() << "expected a ConfigError for:\n" << text;
  return {};
}

std::string with_line(std::string base, const std::string& extra) {
  return base + extra + "\n";
}

}  // namespace

TEST(ParseConfig, MinimalFileGetsDefaults) {
  const auto suite = parse_config_text(kMinimal);
  ASSERT_EQ(suite.experiments.size(), 1u);
  const auto& e = suite.experiments[0];
  EXPECT_EQ(e.name, "basic");
  EXPECT_EQ(e.attack_prior, 0.5);
  EXPECT_TRUE(std::holds_alternative<ExactSort>(e.threshold_mode));
  EXPECT_EQ(e.rho, 0.0);
  EXPECT_EQ(e.mu1, 0.0);
  EXPECT_EQ(e.mu2, 0.0);
  EXPECT_EQ(e.sensor_under_test, 1u);
  EXPECT_EQ(e.targets, std::vector<std::size_t>{1});
  EXPECT_EQ(e.trials, 1000u);
  EXPECT_EQ(suite.format, OutputFormat::Csv);

  const auto config = e.to_config(9);
  EXPECT_EQ(config.sensor_under_test, 0u);
  EXPECT_EQ(config.seed, 9u);
  EXPECT_TRUE(config.attack.targets().contains(0));
}

TEST(ParseConfig, CorrelationOutOfRange) {
  const auto msg = expect_config_error(with_line(kMinimal, "rho = 1.2"));
  EXPECT_NE(msg.find("correlation out of range"), std::string::npos) << msg;
  EXPECT_NE(msg.find("rho"), std::string::npos);
}

TEST(ParseConfig, TypeBNeedsSigmaA) {
  std::string text = kMinimal;
  text.replace(text.find("attack_type = A"), 15, "attack_type = B");
  const auto msg = expect_config_error(text);
  EXPECT_NE(msg.find("sigma_a"), std::string::npos) << msg;
  EXPECT_NO_THROW(parse_config_text(with_line(text, "sigma_a = 0.1")));
}

TEST(ParseConfig, TypeCNeedsUmAndRejectsStrayKeys) {
  std::string text = kMinimal;
  text.replace(text.find("attack_type = A"), 15, "attack_type = C");
  EXPECT_NE(expect_config_error(text).find("um"), std::string::npos);
  EXPECT_NE(expect_config_error(with_line(kMinimal, "um = 0.1")).find("um"), std::string::npos);
  const auto c = parse_config_text(with_line(text, "um = 0.1"));
  EXPECT_EQ(c.experiments[0].um, 0.1);
}

TEST(ParseConfig, ParseErrorsCarryLineNumbers) {
  std::size_t line = 0;
  expect_config_error("[experiment.a]\nsigma1 = 1\nthis is not a pair\n", &line);
  EXPECT_EQ(line, 3u);
  expect_config_error("[experiment.a]\nsigma1 = 1\nsigma1 = 2\n", &line);
  EXPECT_EQ(line, 3u);
  expect_config_error("[experiment.a]\ncolour = red\n", &line);
  EXPECT_EQ(line, 2u);
  expect_config_error("\n[model]\n", &line);
  EXPECT_EQ(line, 2u);
  expect_config_error("[experiment.a]\nsigma1 = two\n", &line);
  EXPECT_EQ(line, 2u);
  expect_config_error("seed = -4\n", &line);
  EXPECT_EQ(line, 1u);
  expect_config_error("[experiment.a\n", &line);
  EXPECT_EQ(line, 1u);
}

TEST(ParseConfig, ValidationNamesTheField) {
  EXPECT_NE(expect_config_error(with_line(kMinimal, "attack_prior = 1")).find("attack_prior"),
            std::string::npos);
  EXPECT_NE(expect_config_error(with_line(kMinimal, "sensor_under_test = 2")).find(
                "sensor_under_test"),
            std::string::npos);
  EXPECT_NE(expect_config_error(with_line(kMinimal, "targets = 1,3")).find("targets"),
            std::string::npos);
  std::string no_trials = kMinimal;
  no_trials.erase(no_trials.find("trials = 1000"), 13);
  EXPECT_NE(expect_config_error(no_trials).find("trials"), std::string::npos);
  std::string bad_sigma = kMinimal;
  bad_sigma.replace(bad_sigma.find("sigma2 = 2.0"), 12, "sigma2 = 0");
  EXPECT_NE(expect_config_error(bad_sigma).find("sigma2"), std::string::npos);
}

TEST(ParseConfig, DuplicateExperimentNames) {
  const std::string text = std::string(kMinimal) + kMinimal;
  std::size_t line = 0;
  EXPECT_NE(expect_config_error(text, &line).find("duplicate"), std::string::npos);
  EXPECT_EQ(line, 11u);
}

TEST(ParseConfig, GridModeRequiresItsKeys) {
  EXPECT_NE(expect_config_error(with_line(kMinimal, "threshold_mode = grid")).find("grid_lo"),
            std::string::npos);
  EXPECT_NE(expect_config_error(with_line(kMinimal, "grid_lo = 0")).find("threshold_mode"),
            std::string::npos);
  const auto suite = parse_config_text(std::string(kMinimal) +
                                       "threshold_mode = grid\ngrid_lo = 0\ngrid_hi = 5\n"
                                       "grid_steps = 501\n");
  const auto& grid = std::get<GridSearch>(suite.experiments[0].threshold_mode);
  EXPECT_EQ(grid.lo, 0.0);
  EXPECT_EQ(grid.hi, 5.0);
  EXPECT_EQ(grid.steps, 501u);
}

TEST(ParseConfig, TopLevelKeys) {
  const auto suite =
      parse_config_text(std::string("seed = 77\nformat = markdown\nout = r.md\n") + kMinimal);
  EXPECT_EQ(suite.seed, 77u);
  EXPECT_EQ(suite.format, OutputFormat::Markdown);
  EXPECT_EQ(suite.output_path, "r.md");
  EXPECT_TRUE(parse_config_text("seed = 3\n").experiments.empty());
}

TEST(ParseConfig, CanonicalTextRoundTrips) {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  std::uniform_real_distribution<double> pos(0.01, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    SuiteConfig suite;
    suite.seed = gen();
    suite.format = trial % 2 ? OutputFormat::Csv : OutputFormat::Markdown;
    if (trial % 3 == 0) suite.output_path = "out_" + std::to_string(trial) + ".csv";
    for (int k = 0; k < 1 + trial % 4; ++k) {
      ExperimentParams p;
      p.name = "e" + std::to_string(k) + "_" + std::to_string(trial);
      p.rho = u(gen);
      p.sigma1 = pos(gen);
      p.sigma2 = pos(gen);
      p.mu1 = u(gen) * 100;
      p.mu2 = u(gen) / 3;
      p.attack_type = static_cast<AttackKind>(gen() % 3);
      p.am = u(gen) * 30;
      if (p.attack_type == AttackKind::B) p.sigma_a = pos(gen);
      if (p.attack_type == AttackKind::C) p.um = pos(gen);
      p.targets = gen() % 2 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{2, 1};
      p.sensor_under_test = p.targets.size() == 2 && gen() % 2 ? 2 : 1;
      p.trials = 1 + gen() % 10'000'000;
      p.attack_prior = pos(gen) / 20.5;
      if (gen() % 2) p.threshold_mode = GridSearch{-pos(gen), pos(gen), 2 + gen() % 1000};
      suite.experiments.push_back(p);
    }
    suite.validate();
    EXPECT_EQ(parse_config_text(to_config_text(suite)), suite);
  }
}

TEST(ParseConfig, ReadsFiles) {
  const auto path = std::filesystem::temp_directory_path() / "shapley_loc_config_test.ini";
  {
    std::ofstream out(path);
    out << kMinimal;
  }
  EXPECT_EQ(parse_config(path).experiments.size(), 1u);
  std::filesystem::remove(path);
  EXPECT_THROW(parse_config(path), ConfigError);
}
