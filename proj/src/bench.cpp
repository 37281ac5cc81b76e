#include "shapley_loc/bench.hpp"

#include <algorithm>
#include <ctime>

#include "shapley_loc/format.hpp"
#include "shapley_loc/gaussian_model.hpp"
#include "shapley_loc/shapley.hpp"
#include "shapley_loc/value_function.hpp"

namespace shapley_loc {
namespace {

// Process CPU time rather than wall time: the bench is single-threaded, and
// CPU time is immune to preemption and hypervisor steal on shared hosts.
double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

volatile double g_sink = 0.0;

// Mean per-call time of one batch of at least `min_seconds`.
template <typename F>
double batch_time_per_call(F&& call, double min_seconds) {
  std::size_t calls = 0;
  const double start = cpu_seconds();
  double elapsed = 0.0;
  do {
    call();
    ++calls;
    elapsed = cpu_seconds() - start;
  } while (elapsed < min_seconds);
  return elapsed / static_cast<double>(calls);
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

struct Case {
  GaussianModel model;
  Observation x;
};

}  // namespace

std::vector<BenchRow> bench(const std::vector<std::size_t>& n_list, const BenchOptions& options) {
  SplitMixStream rng(options.seed);
  std::vector<Case> cases;
  std::vector<BenchRow> rows;
  for (const std::size_t n : n_list) {
    std::vector<double> means(n);
    std::vector<double> sigmas(n);
    for (std::size_t j = 0; j < n; ++j) {
      means[j] = 2.0 * rng.uniform01() - 1.0;
      sigmas[j] = 0.5 + 1.5 * rng.uniform01();
    }
    auto model = GaussianModel::independent(means, sigmas);
    Observation x = model.sample(rng);
    cases.push_back({std::move(model), std::move(x)});
    BenchRow row;
    row.n = n;
    rows.push_back(row);
  }

  // Round-robin over sizes within each repetition, so a slow stretch on a
  // shared machine hits every n rather than skewing one ratio. The median
  // batch is reported: the minimum is just as exposed to rare quiet spells.
  const std::size_t reps = std::max<std::size_t>(1, options.reps);
  std::vector<std::vector<double>> shapley_times(cases.size()), single_times(cases.size());
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const GaussianValue v(cases[k].model);
      const Observation& x = cases[k].x;
      const std::size_t n = rows[k].n;
      shapley_times[k].push_back(batch_time_per_call(
          [&] { g_sink = g_sink + all_shapley(v, x).phi[0]; }, options.min_batch_seconds));
      single_times[k].push_back(batch_time_per_call(
          [&] {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) total += v(Coalition::empty(n).with(i), x);
            g_sink = g_sink + total;
          },
          options.min_batch_seconds));
    }
  }
  for (std::size_t k = 0; k < cases.size(); ++k) {
    rows[k].shapley_seconds = median(shapley_times[k]);
    rows[k].single_seconds = median(single_times[k]);
  }

  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k - 1].n + 1 == rows[k].n) {
      rows[k].shapley_ratio = rows[k].shapley_seconds / rows[k - 1].shapley_seconds;
      rows[k].single_ratio = rows[k].single_seconds / rows[k - 1].single_seconds;
    }
  }
  return rows;
}

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows, bool markdown) {
  const auto ratio = [](const std::optional<double>& r) {
    return r ? format_significant(*r, 4) : std::string();
  };
  if (markdown) {
    out << "| n | shapley_s | single_s | shapley_ratio | single_ratio |\n";
    out << "|---|---|---|---|---|\n";
  } else {
    out << "n,shapley_s,single_s,shapley_ratio,single_ratio\n";
  }
  for (const auto& r : rows) {
    const std::string cells[] = {std::to_string(r.n), format_significant(r.shapley_seconds, 4),
                                 format_significant(r.single_seconds, 4), ratio(r.shapley_ratio),
                                 ratio(r.single_ratio)};
    if (markdown) {
      out << '|';
      for (const auto& c : cells) out << ' ' << c << " |";
    } else {
      for (std::size_t k = 0; k < std::size(cells); ++k) out << (k ? "," : "") << cells[k];
    }
    out << '\n';
  }
}

}  // namespace shapley_loc
