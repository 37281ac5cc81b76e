#include "shapley_loc/suite.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "shapley_loc/format.hpp"

namespace shapley_loc {
namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string> row_cells(const SuiteRow& row, bool rate_sum) {
  const auto& p = row.params;
  std::vector<std::string> cells = {
      p.name,
      format_number(p.rho),
      format_number(p.sigma1),
      format_number(p.sigma2),
      std::string(1, to_char(p.attack_type)),
      optional_number(p.sigma_a),
      format_number(p.am),
      optional_number(p.um),
      std::to_string(p.trials),
      format_number(p.attack_prior),
  };
  if (!row.result) {
    cells.emplace_back("FAILED");
    const auto width = kResultColumns.size() + (rate_sum ? kRateSumColumns.size() : 0);
    cells.resize(width);
    return cells;
  }
  const auto& v = row.result->single_term;
  const auto& phi = row.result->shapley;
  cells.push_back(format_number(v.pe));
  cells.push_back(format_number(phi.pe));
  cells.push_back(format_number(v.ci_halfwidth));
  cells.push_back(format_number(phi.ci_halfwidth));
  cells.push_back(format_number(v.threshold));
  cells.push_back(format_number(phi.threshold));
  cells.push_back(optional_number(row.analytic_pe));
  if (rate_sum) {
    cells.push_back(format_number(v.pe_rate_sum));
    cells.push_back(format_number(phi.pe_rate_sum));
  }
  return cells;
}

class TableWriter {
 public:
  TableWriter(std::ostream& out, OutputFormat format, bool rate_sum)
      : out_(out), format_(format), rate_sum_(rate_sum) {}

  void preamble(std::uint64_t seed, bool timestamp) {
    if (format_ == OutputFormat::Csv) {
      if (timestamp) out_ << "# generated: " << utc_timestamp() << '\n';
      out_ << "# seed: " << seed << '\n';
    } else {
      if (timestamp) out_ << "Generated: " << utc_timestamp() << "\n\n";
      out_ << "Seed: " << seed << "\n\n";
    }
  }

  void header() {
    auto cols = kResultColumns;
    if (rate_sum_) cols.insert(cols.end(), kRateSumColumns.begin(), kRateSumColumns.end());
    write(cols);
    if (format_ == OutputFormat::Markdown) {
      out_ << '|';
      for (std::size_t k = 0; k < cols.size(); ++k) out_ << "---|";
      out_ << '\n';
    }
    out_.flush();
  }

  void row(const SuiteRow& r) {
    write(row_cells(r, rate_sum_));
    out_.flush();
  }

 private:
  void write(const std::vector<std::string>& cells) {
    if (format_ == OutputFormat::Csv) {
      for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
    } else {
      out_ << '|';
      for (const auto& c : cells) out_ << ' ' << c << " |";
    }
    out_ << '\n';
  }

  std::ostream& out_;
  OutputFormat format_;
  bool rate_sum_;
};

ExperimentParams base_params(std::string name, std::size_t trials) {
  ExperimentParams p;
  p.name = std::move(name);
  p.trials = trials;
  p.targets = {1};
  p.sensor_under_test = 1;
  return p;
}

}  // namespace

std::uint64_t experiment_seed(std::uint64_t suite_seed, std::size_t index) {
  return derive_seed(suite_seed, index);
}

int run_suite(const SuiteConfig& suite, std::ostream& out, const RunOptions& options,
              std::vector<SuiteRow>* rows) {
  TableWriter writer(out, suite.format, options.rate_sum);
  writer.preamble(suite.seed, options.timestamp);
  writer.header();

  int status = 0;
  for (std::size_t k = 0; k < suite.experiments.size(); ++k) {
    const auto& params = suite.experiments[k];
    SuiteRow row{params, std::nullopt, std::nullopt, {}};
    try {
      const auto config = params.to_config(experiment_seed(suite.seed, k), options.workers);
      row.result = run_experiment(config);
      row.analytic_pe = params.analytic_pe();
    } catch (const std::exception& e) {
      row.error = e.what();
      status = 2;
    }
    writer.row(row);
    if (options.progress != nullptr) {
      *options.progress << "[" << (k + 1) << "/" << suite.experiments.size() << "] "
                        << params.name;
      if (row.result) {
        *options.progress << ": Pe_v=" << format_significant(row.result->single_term.pe, 6)
                          << " Pe_phi=" << format_significant(row.result->shapley.pe, 6);
      } else {
        *options.progress << ": FAILED: " << row.error;
      }
      *options.progress << '\n';
    }
    if (rows != nullptr) rows->push_back(std::move(row));
  }
  return status;
}

SuiteConfig table1_preset(std::size_t trials, std::uint64_t seed) {
  SuiteConfig suite;
  suite.seed = seed;
  const std::pair<double, const char*> sigmas[] = {{1.0, "1.0"}, {1.5, "1.5"}, {2.0, "2.0"}};
  for (const auto& [sigma, s] : sigmas) {
    const auto add = [&](std::string suffix) {
      auto p = base_params(std::string("sigma") + s + "_" + suffix, trials);
      p.rho = 0.0;
      p.sigma1 = sigma;
      p.sigma2 = sigma;
      return p;
    };
    auto a = add("A");
    a.attack_type = AttackKind::A;
    a.am = 10.0;
    auto b1 = add("B_sa0.1");
    b1.attack_type = AttackKind::B;
    b1.am = 10.0;
    b1.sigma_a = 0.1;
    auto b2 = add("B_sa1");
    b2.attack_type = AttackKind::B;
    b2.am = 10.0;
    b2.sigma_a = 1.0;
    auto c = add("C");
    c.attack_type = AttackKind::C;
    c.am = 9.95;
    c.um = 0.1;
    suite.experiments.insert(suite.experiments.end(), {a, b1, b2, c});
  }
  // Table order: grouped by attack setting, sigma ascending within a group.
  std::vector<ExperimentParams> ordered;
  for (std::size_t group = 0; group < 4; ++group) {
    for (std::size_t s = 0; s < 3; ++s) ordered.push_back(suite.experiments[s * 4 + group]);
  }
  suite.experiments = std::move(ordered);
  suite.validate();
  return suite;
}

SuiteConfig table2_preset(std::size_t trials, std::uint64_t seed) {
  SuiteConfig suite;
  suite.seed = seed;
  for (const double rho : {0.2, -0.2, 0.5, -0.5, 0.8, -0.8}) {
    auto p = base_params("rho" + format_number(rho), trials);
    p.rho = rho;
    p.sigma1 = 2.0;
    p.sigma2 = 2.0;
    p.attack_type = AttackKind::A;
    p.am = 1.0;
    suite.experiments.push_back(p);
  }
  suite.validate();
  return suite;
}

}  // namespace shapley_loc
