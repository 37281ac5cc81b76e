#include "shapley_loc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "shapley_loc/format.hpp"
#include "shapley_loc/threshold.hpp"

namespace shapley_loc {
namespace {

constexpr std::string_view kSectionPrefix = "experiment.";
constexpr std::size_t kConfigSensors = 2;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

bool valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '.';
  });
}

ConfigError field_error(const std::string& experiment, std::string_view field,
                        const std::string& message, std::size_t line = 0) {
  return {line, "experiment '" + experiment + "': " + std::string(field) + ": " + message};
}

// Raw key/value pairs of one section before interpretation.
struct Section {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> entries;
};

class SectionReader {
 public:
  explicit SectionReader(const Section& section) : section_(section) {}

  bool has(std::string_view key) const { return section_.entries.contains(key); }

  std::optional<double> number(std::string_view key) const {
    const auto it = section_.entries.find(key);
    if (it == section_.entries.end()) return std::nullopt;
    auto value = parse_number(it->second.first);
    if (!value || !std::isfinite(*value)) {
      throw field_error(section_.name, key, "expected a finite number, got '" +
                                                it->second.first + "'",
                        it->second.second);
    }
    return value;
  }

  double required_number(std::string_view key) const {
    auto value = number(key);
    if (!value) throw field_error(section_.name, key, "missing required key", section_.line);
    return *value;
  }

  std::optional<std::size_t> count(std::string_view key) const {
    const auto it = section_.entries.find(key);
    if (it == section_.entries.end()) return std::nullopt;
    auto value = parse_integer<std::size_t>(it->second.first);
    if (!value) {
      throw field_error(section_.name, key,
                        "expected a non-negative integer, got '" + it->second.first + "'",
                        it->second.second);
    }
    return value;
  }

  std::optional<std::string> text(std::string_view key) const {
    const auto it = section_.entries.find(key);
    if (it == section_.entries.end()) return std::nullopt;
    return it->second.first;
  }

  std::size_t line_of(std::string_view key) const {
    const auto it = section_.entries.find(key);
    return it == section_.entries.end() ? section_.line : it->second.second;
  }

 private:
  const Section& section_;
};

ExperimentParams interpret(const Section& section) {
  const SectionReader in(section);
  ExperimentParams p;
  p.name = section.name;
  p.rho = in.number("rho").value_or(0.0);
  p.sigma1 = in.required_number("sigma1");
  p.sigma2 = in.required_number("sigma2");
  p.mu1 = in.number("mu1").value_or(0.0);
  p.mu2 = in.number("mu2").value_or(0.0);

  const auto kind_text = in.text("attack_type");
  if (!kind_text) throw field_error(p.name, "attack_type", "missing required key", section.line);
  const auto kind = parse_attack_kind(*kind_text);
  if (!kind) {
    throw field_error(p.name, "attack_type", "expected A, B or C, got '" + *kind_text + "'",
                      in.line_of("attack_type"));
  }
  p.attack_type = *kind;
  p.am = in.required_number("am");
  p.sigma_a = in.number("sigma_a");
  p.um = in.number("um");

  if (const auto targets = in.text("targets")) {
    p.targets.clear();
    std::stringstream ss(*targets);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto index = parse_integer<std::size_t>(trim(item));
      if (!index) {
        throw field_error(p.name, "targets", "expected a comma-separated list of sensor numbers",
                          in.line_of("targets"));
      }
      p.targets.push_back(*index);
    }
  }
  p.sensor_under_test = in.count("sensor_under_test").value_or(1);
  const auto trials = in.count("trials");
  if (!trials) throw field_error(p.name, "trials", "missing required key", section.line);
  p.trials = *trials;
  p.attack_prior = in.number("attack_prior").value_or(0.5);

  const std::string mode = in.text("threshold_mode").value_or("exact-sort");
  const bool has_grid_keys = in.has("grid_lo") || in.has("grid_hi") || in.has("grid_steps");
  if (mode == "exact-sort") {
    if (has_grid_keys) {
      throw field_error(p.name, "threshold_mode",
                        "grid_lo/grid_hi/grid_steps require threshold_mode = grid",
                        in.line_of("threshold_mode"));
    }
    p.threshold_mode = ExactSort{};
  } else if (mode == "grid") {
    GridSearch grid;
    grid.lo = in.required_number("grid_lo");
    grid.hi = in.required_number("grid_hi");
    const auto steps = in.count("grid_steps");
    if (!steps) throw field_error(p.name, "grid_steps", "missing required key", section.line);
    grid.steps = *steps;
    p.threshold_mode = grid;
  } else {
    throw field_error(p.name, "threshold_mode", "expected exact-sort or grid, got '" + mode + "'",
                      in.line_of("threshold_mode"));
  }

  try {
    p.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(section.line, e.what());
  }
  return p;
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "rho",     "sigma1",  "sigma2",            "mu1",    "mu2",          "attack_type",
    "am",      "sigma_a", "um",                "targets", "sensor_under_test", "trials",
    "attack_prior", "threshold_mode", "grid_lo", "grid_hi", "grid_steps",
};

}  // namespace

bool operator==(const ExperimentParams& a, const ExperimentParams& b) {
  return a.name == b.name && a.rho == b.rho && a.sigma1 == b.sigma1 && a.sigma2 == b.sigma2 &&
         a.mu1 == b.mu1 && a.mu2 == b.mu2 && a.attack_type == b.attack_type && a.am == b.am &&
         a.sigma_a == b.sigma_a && a.um == b.um && a.targets == b.targets &&
         a.sensor_under_test == b.sensor_under_test && a.trials == b.trials &&
         a.attack_prior == b.attack_prior && a.threshold_mode == b.threshold_mode;
}

void ExperimentParams::validate() const {
  const auto fail = [&](std::string_view field, const std::string& msg) {
    throw field_error(name, field, msg);
  };
  if (!(std::abs(rho) < 1.0)) fail("rho", "correlation out of range");
  if (!(sigma1 > 0.0)) fail("sigma1", "standard deviation must be positive");
  if (!(sigma2 > 0.0)) fail("sigma2", "standard deviation must be positive");
  if (!std::isfinite(mu1)) fail("mu1", "must be finite");
  if (!std::isfinite(mu2)) fail("mu2", "must be finite");
  if (!std::isfinite(am)) fail("am", "must be finite");

  if (attack_type == AttackKind::B && !sigma_a) fail("sigma_a", "required for a type B attack");
  if (attack_type != AttackKind::B && sigma_a) fail("sigma_a", "only valid for a type B attack");
  if (sigma_a && !(*sigma_a >= 0.0)) fail("sigma_a", "must be non-negative");
  if (attack_type == AttackKind::C && !um) fail("um", "required for a type C attack");
  if (attack_type != AttackKind::C && um) fail("um", "only valid for a type C attack");
  if (um && !(*um >= 0.0)) fail("um", "must be non-negative");

  if (targets.empty()) fail("targets", "at least one target sensor is required");
  for (auto t : targets) {
    if (t < 1 || t > kConfigSensors) fail("targets", "sensor numbers must be 1 or 2");
  }
  if (sensor_under_test < 1 || sensor_under_test > kConfigSensors) {
    fail("sensor_under_test", "must be 1 or 2");
  }
  if (std::find(targets.begin(), targets.end(), sensor_under_test) == targets.end()) {
    fail("sensor_under_test", "must be one of the attack targets");
  }
  if (trials < 1) fail("trials", "must be at least 1");
  if (!(attack_prior > 0.0 && attack_prior < 1.0)) {
    fail("attack_prior", "must lie strictly between 0 and 1");
  }
  if (const auto* grid = std::get_if<GridSearch>(&threshold_mode)) {
    if (!(grid->lo < grid->hi)) fail("grid_lo", "must be below grid_hi");
    if (grid->steps < 2) fail("grid_steps", "must be at least 2");
  }
}

ExperimentConfig ExperimentParams::to_config(std::uint64_t seed, unsigned workers) const {
  Coalition target_set = Coalition::empty(kConfigSensors);
  for (auto t : targets) target_set = target_set.with(t - 1);
  return ExperimentConfig{
      .model = GaussianModel::bivariate(mu1, mu2, sigma1, sigma2, rho),
      .attack = AttackSpec(attack_type, am, sigma_a, um, target_set),
      .sensor_under_test = sensor_under_test - 1,
      .trials = trials,
      .attack_prior = attack_prior,
      .seed = seed,
      .threshold_mode = threshold_mode,
      .workers = workers,
  };
}

std::optional<double> ExperimentParams::analytic_pe() const {
  if (attack_type != AttackKind::A) return std::nullopt;
  const double sigma = sensor_under_test == 1 ? sigma1 : sigma2;
  return analytic_pe_gaussian(sigma, am, attack_prior);
}

void SuiteConfig::validate() const {
  std::set<std::string, std::less<>> names;
  for (const auto& e : experiments) {
    if (!names.insert(e.name).second) {
      throw ConfigError(0, "duplicate experiment name '" + e.name + "'");
    }
    e.validate();
  }
}

SuiteConfig parse_config_text(std::string_view text) {
  SuiteConfig suite;
  std::vector<Section> sections;
  std::set<std::string, std::less<>> top_keys;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const auto header = trim(line.substr(1, line.size() - 2));
      if (!header.starts_with(kSectionPrefix)) {
        throw ConfigError(line_no, "expected [experiment.<name>], got [" + std::string(header) +
                                       "]");
      }
      const auto name = header.substr(kSectionPrefix.size());
      if (!valid_name(name)) {
        throw ConfigError(line_no, "invalid experiment name '" + std::string(name) + "'");
      }
      for (const auto& s : sections) {
        if (s.name == name) {
          throw ConfigError(line_no, "duplicate experiment name '" + std::string(name) + "'");
        }
      }
      sections.push_back({std::string(name), line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");

    if (sections.empty()) {
      if (!top_keys.insert(key).second) throw ConfigError(line_no, "duplicate key '" + key + "'");
      if (key == "seed") {
        const auto seed = parse_integer<std::uint64_t>(value);
        if (!seed) throw ConfigError(line_no, "seed must be a non-negative integer");
        suite.seed = *seed;
      } else if (key == "format") {
        if (value == "csv") {
          suite.format = OutputFormat::Csv;
        } else if (value == "markdown") {
          suite.format = OutputFormat::Markdown;
        } else {
          throw ConfigError(line_no, "format must be csv or markdown");
        }
      } else if (key == "out") {
        suite.output_path = value;
      } else {
        throw ConfigError(line_no, "unknown top-level key '" + key + "'");
      }
      continue;
    }

    if (!kKnownKeys.contains(key)) throw ConfigError(line_no, "unknown key '" + key + "'");
    auto& entries = sections.back().entries;
    if (entries.contains(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    entries.emplace(key, std::make_pair(value, line_no));
  }

  for (const auto& s : sections) suite.experiments.push_back(interpret(s));
  suite.validate();
  return suite;
}

SuiteConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string to_config_text(const SuiteConfig& suite) {
  std::ostringstream out;
  out << "seed = " << suite.seed << '\n';
  out << "format = " << (suite.format == OutputFormat::Csv ? "csv" : "markdown") << '\n';
  if (!suite.output_path.empty()) out << "out = " << suite.output_path << '\n';
  for (const auto& e : suite.experiments) {
    out << "\n[experiment." << e.name << "]\n";
    out << "rho = " << format_number(e.rho) << '\n';
    out << "sigma1 = " << format_number(e.sigma1) << '\n';
    out << "sigma2 = " << format_number(e.sigma2) << '\n';
    out << "mu1 = " << format_number(e.mu1) << '\n';
    out << "mu2 = " << format_number(e.mu2) << '\n';
    out << "attack_type = " << to_char(e.attack_type) << '\n';
    out << "am = " << format_number(e.am) << '\n';
    if (e.sigma_a) out << "sigma_a = " << format_number(*e.sigma_a) << '\n';
    if (e.um) out << "um = " << format_number(*e.um) << '\n';
    out << "targets = ";
    for (std::size_t k = 0; k < e.targets.size(); ++k) out << (k ? "," : "") << e.targets[k];
    out << '\n';
    out << "sensor_under_test = " << e.sensor_under_test << '\n';
    out << "trials = " << e.trials << '\n';
    out << "attack_prior = " << format_number(e.attack_prior) << '\n';
    if (const auto* grid = std::get_if<GridSearch>(&e.threshold_mode)) {
      out << "threshold_mode = grid\n";
      out << "grid_lo = " << format_number(grid->lo) << '\n';
      out << "grid_hi = " << format_number(grid->hi) << '\n';
      out << "grid_steps = " << grid->steps << '\n';
    } else {
      out << "threshold_mode = exact-sort\n";
    }
  }
  return out.str();
}

}  // namespace shapley_loc
