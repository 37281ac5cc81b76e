#include "shapley_loc/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "shapley_loc/errors.hpp"

namespace shapley_loc {
namespace {

constexpr double kZ95 = 1.96;

struct Labeled {
  double score;
  bool attacked;
};

std::vector<Labeled> sorted_scores(std::span<const ScorePair> pairs, Statistic statistic,
                                   std::size_t& attacked) {
  std::vector<Labeled> out;
  out.reserve(pairs.size());
  attacked = 0;
  for (const auto& p : pairs) {
    const double s = statistic == Statistic::Shapley ? p.phi_score : p.v_score;
    out.push_back({s, p.attacked});
    attacked += p.attacked ? 1 : 0;
  }
  if (attacked == 0 || attacked == out.size()) {
    throw DegenerateLabels("threshold optimization needs both attacked and unattacked trials");
  }
  std::sort(out.begin(), out.end(),
            [](const Labeled& a, const Labeled& b) { return a.score < b.score; });
  return out;
}

ErrorRateReport make_report(Statistic statistic, double threshold, std::size_t trials,
                            std::size_t attacked, std::size_t misses, std::size_t false_alarms) {
  ErrorRateReport r;
  r.statistic = statistic;
  r.threshold = threshold;
  r.trials = trials;
  r.attacked = attacked;
  r.misses = misses;
  r.false_alarms = false_alarms;
  r.pe = static_cast<double>(misses + false_alarms) / static_cast<double>(trials);
  r.ci_halfwidth = binomial_ci(r.pe, trials);
  r.pe_rate_sum = static_cast<double>(misses) / static_cast<double>(attacked) +
                  static_cast<double>(false_alarms) / static_cast<double>(trials - attacked);
  return r;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

std::string_view to_string(Statistic s) noexcept {
  return s == Statistic::Shapley ? "shapley" : "single-term";
}

double binomial_ci(double pe, std::size_t m) {
  if (!(pe >= 0.0 && pe <= 1.0)) throw OutOfRange("binomial_ci needs 0 <= pe <= 1");
  if (m == 0) throw OutOfRange("binomial_ci needs m >= 1");
  return kZ95 * std::sqrt(pe * (1.0 - pe) / static_cast<double>(m));
}

ErrorRateReport optimize_threshold_exact(std::span<const ScorePair> pairs, Statistic statistic) {
  std::size_t attacked = 0;
  const auto sorted = sorted_scores(pairs, statistic, attacked);
  const std::size_t unattacked = sorted.size() - attacked;

  // Threshold below every score: everything is declared attacked.
  std::size_t misses = 0;
  std::size_t false_alarms = unattacked;
  std::size_t best_misses = misses;
  std::size_t best_fa = false_alarms;
  double best_tau = -std::numeric_limits<double>::infinity();

  std::size_t k = 0;
  while (k < sorted.size()) {
    const double score = sorted[k].score;
    for (; k < sorted.size() && sorted[k].score == score; ++k) {
      if (sorted[k].attacked) {
        ++misses;
      } else {
        --false_alarms;
      }
    }
    double tau = std::numeric_limits<double>::infinity();
    if (k < sorted.size()) {
      const double next = sorted[k].score;
      tau = score + 0.5 * (next - score);
      if (!(tau < next)) tau = score;
    }
    if (misses + false_alarms < best_misses + best_fa) {
      best_misses = misses;
      best_fa = false_alarms;
      best_tau = tau;
    }
  }
  return make_report(statistic, best_tau, sorted.size(), attacked, best_misses, best_fa);
}

ErrorRateReport optimize_threshold_grid(std::span<const ScorePair> pairs, Statistic statistic,
                                        double lo, double hi, std::size_t steps) {
  if (!(lo < hi)) throw OutOfRange("grid needs lo < hi");
  if (steps < 2) throw OutOfRange("grid needs at least two steps");
  std::size_t attacked = 0;
  const auto sorted = sorted_scores(pairs, statistic, attacked);
  const std::size_t unattacked = sorted.size() - attacked;

  std::size_t k = 0;  // scores[0..k) are <= tau
  std::size_t misses = 0;
  std::size_t below_unattacked = 0;
  std::size_t best_errors = std::numeric_limits<std::size_t>::max();
  std::size_t best_misses = 0;
  std::size_t best_fa = 0;
  double best_tau = lo;
  const double step = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t g = 0; g < steps; ++g) {
    const double tau = g + 1 == steps ? hi : lo + static_cast<double>(g) * step;
    for (; k < sorted.size() && sorted[k].score <= tau; ++k) {
      if (sorted[k].attacked) {
        ++misses;
      } else {
        ++below_unattacked;
      }
    }
    const std::size_t fa = unattacked - below_unattacked;
    if (misses + fa < best_errors) {
      best_errors = misses + fa;
      best_misses = misses;
      best_fa = fa;
      best_tau = tau;
    }
  }
  return make_report(statistic, best_tau, sorted.size(), attacked, best_misses, best_fa);
}

double analytic_pe_gaussian(double sigma, double am, double attack_prior) {
  if (!(sigma > 0.0)) throw OutOfRange("analytic_pe_gaussian needs sigma > 0");
  if (!(attack_prior >= 0.0 && attack_prior <= 1.0)) {
    throw OutOfRange("attack_prior must lie in [0, 1]");
  }
  const double p = attack_prior;
  const auto pe = [&](double t) {
    const double false_alarm = 2.0 * normal_sf(t / sigma);
    const double miss = normal_cdf((t - am) / sigma) - normal_cdf((-t - am) / sigma);
    return (1.0 - p) * false_alarm + p * miss;
  };

  // Coarse scan to bracket the global minimum, then golden section inside it.
  const double upper = std::abs(am) + 8.0 * sigma;
  constexpr int kScan = 4096;
  const double h = upper / kScan;
  int best = 0;
  double best_value = pe(0.0);
  for (int j = 1; j <= kScan; ++j) {
    const double value = pe(j * h);
    if (value < best_value) {
      best_value = value;
      best = j;
    }
  }
  double a = std::max(0.0, (best - 1) * h);
  double b = std::min(upper, (best + 1) * h);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = pe(c);
  double fd = pe(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = pe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = pe(d);
    }
  }
  return std::min({best_value, pe(0.5 * (a + b)), pe(0.0), pe(upper)});
}

}  // namespace shapley_loc
