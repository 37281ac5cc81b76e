#include "shapley_loc/cli.hpp"

#include <fstream>
#include <numeric>
#include <optional>

#include <CLI11.hpp>

#include "shapley_loc/bench.hpp"
#include "shapley_loc/config.hpp"
#include "shapley_loc/suite.hpp"

namespace shapley_loc::cli {
namespace {

constexpr std::size_t kDefaultPresetTrials = 1'000'000;
constexpr std::size_t kFullPresetTrials = 10'000'000;

struct Options {
  std::string config_path;
  std::string preset;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  bool full = false;
  std::size_t max_n = 18;
  std::size_t bench_reps = 5;
  std::optional<std::string> format;
  std::optional<std::string> out_path;
  bool no_timestamp = false;
  bool rate_sum = false;
  bool quiet = false;
  unsigned threads = 0;
};

int emit_suite(SuiteConfig suite, const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.format) suite.format = *opt.format == "markdown" ? OutputFormat::Markdown : OutputFormat::Csv;
  if (opt.out_path) suite.output_path = *opt.out_path;

  RunOptions run_options;
  run_options.workers = opt.threads;
  run_options.timestamp = !opt.no_timestamp;
  run_options.rate_sum = opt.rate_sum;
  run_options.progress = opt.quiet ? nullptr : &err;

  if (suite.output_path.empty()) return run_suite(suite, out, run_options);
  std::ofstream file(suite.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot write '" << suite.output_path << "'\n";
    return kExitRuntimeError;
  }
  return run_suite(suite, file, run_options);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Shapley value vs single-term anomaly localization experiments", "shapley-loc"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", opt.format, "Output table format")
      ->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--out", opt.out_path, "Write the table to PATH instead of stdout");
  app.add_flag("--no-timestamp", opt.no_timestamp, "Omit the generated-at header line");
  app.add_flag("--rate-sum", opt.rate_sum,
               "Append miss-rate + false-alarm-rate columns for both statistics");
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  app.add_flag("-q,--quiet", opt.quiet, "No progress output on stderr");

  auto* run_cmd = app.add_subcommand("run", "Run the experiments in a config file");
  run_cmd->add_option("config", opt.config_path, "Config file")->required();
  run_cmd->add_option("--seed", opt.seed, "Override the suite seed");

  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in parameter grid");
  preset_cmd->add_option("name", opt.preset, "table1 or table2")
      ->required()
      ->check(CLI::IsMember({"table1", "table2"}));
  preset_cmd->add_option("--trials", opt.trials, "Monte Carlo trials per experiment")
      ->check(CLI::PositiveNumber);
  preset_cmd->add_option("--seed", opt.seed, "Suite seed");
  preset_cmd->add_flag("--full", opt.full, "Use 10^7 trials per experiment");

  auto* bench_cmd = app.add_subcommand("bench", "Time exact Shapley against the single-term score");
  bench_cmd->add_option("--max-n", opt.max_n, "Largest sensor count")
      ->check(CLI::Range(1, 24));
  bench_cmd->add_option("--reps", opt.bench_reps, "Timed batches per n")->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"shapley-loc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (*run_cmd) {
      SuiteConfig suite;
      try {
        suite = parse_config(opt.config_path);
      } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
      }
      if (opt.seed) suite.seed = *opt.seed;
      return emit_suite(std::move(suite), opt, out, err);
    }
    if (*preset_cmd) {
      const std::size_t trials =
          opt.trials.value_or(opt.full ? kFullPresetTrials : kDefaultPresetTrials);
      const std::uint64_t seed = opt.seed.value_or(1);
      auto suite = opt.preset == "table1" ? table1_preset(trials, seed)
                                          : table2_preset(trials, seed);
      return emit_suite(std::move(suite), opt, out, err);
    }
    if (*bench_cmd) {
      std::vector<std::size_t> ns(opt.max_n);
      std::iota(ns.begin(), ns.end(), std::size_t{1});
      BenchOptions bench_options;
      bench_options.reps = opt.bench_reps;
      const auto rows = bench(ns, bench_options);
      const bool markdown = opt.format && *opt.format == "markdown";
      if (opt.out_path) {
        std::ofstream file(*opt.out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
          err << "error: cannot write '" << *opt.out_path << "'\n";
          return kExitRuntimeError;
        }
        write_bench_table(file, rows, markdown);
      } else {
        write_bench_table(out, rows, markdown);
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitConfigError;
}

}  // namespace shapley_loc::cli
