#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace shapley_loc {

struct BenchRow {
  std::size_t n = 0;
  /// Mean CPU time of one all_shapley call, seconds.
  double shapley_seconds = 0.0;
  /// Mean CPU time of the single-term scores v({i}) for all n sensors.
  double single_seconds = 0.0;
  /// time(n) / time(n-1); empty for the first row.
  std::optional<double> shapley_ratio;
  std::optional<double> single_ratio;
};

struct BenchOptions {
  /// Timed batches per n, interleaved across sizes; the median is reported.
  std::size_t reps = 5;
  /// Each batch repeats the call until it has run at least this long.
  double min_batch_seconds = 0.02;
  std::uint64_t seed = 1;
};

/// Times exact Shapley against the single-term statistic on random
/// independent Gaussian models with n sensors, for each n in n_list.
std::vector<BenchRow> bench(const std::vector<std::size_t>& n_list, const BenchOptions& options = {});

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows, bool markdown);

}  // namespace shapley_loc
