#include "shapley_loc/shapley.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace shapley_loc {
namespace {

constexpr std::size_t kExactFactorialLimit = 20;

constexpr std::array<std::uint64_t, kExactFactorialLimit + 1> kFactorials = [] {
  std::array<std::uint64_t, kExactFactorialLimit + 1> f{};
  f[0] = 1;
  for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] * k;
  return f;
}();

void check_universe(std::size_t n, std::size_t i) {
  if (n == 0) throw OutOfRange("value function has an empty universe");
  if (i >= n) {
    throw OutOfRange("sensor index " + std::to_string(i) + " outside universe of " +
                     std::to_string(n));
  }
}

void check_exact_budget(std::size_t n) {
  if (n > kMaxExactUniverse) {
    throw UniverseTooLarge("exact Shapley enumeration limited to " +
                           std::to_string(kMaxExactUniverse) + " sensors, got " +
                           std::to_string(n) + "; use sampled_shapley");
  }
}

std::vector<double> weights_by_cardinality(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = shapley_weight(k, n);
  return w;
}

// Spreads the bits of an (n-1)-bit mask around position i, leaving bit i clear.
constexpr std::uint64_t insert_gap(std::uint64_t mask, std::size_t i) noexcept {
  const std::uint64_t low = mask & ((std::uint64_t{1} << i) - 1);
  const std::uint64_t high = (mask >> i) << (i + 1);
  return low | high;
}

}  // namespace

double shapley_weight(std::size_t s_card, std::size_t n) {
  if (n == 0 || n > kMaxExactUniverse || s_card >= n) {
    throw OutOfRange("shapley_weight needs 0 <= |S| < n <= 24, got |S|=" +
                     std::to_string(s_card) + ", n=" + std::to_string(n));
  }
  if (n <= kExactFactorialLimit) {
    return static_cast<double>(kFactorials[s_card]) *
           static_cast<double>(kFactorials[n - s_card - 1]) /
           static_cast<double>(kFactorials[n]);
  }
  const auto lf = [](std::size_t k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  return std::exp(lf(s_card) + lf(n - s_card - 1) - lf(n));
}

double exact_shapley(const ValueFunction& v, const Observation& x, std::size_t i) {
  const std::size_t n = v.size();
  check_universe(n, i);
  check_exact_budget(n);

  const auto w = weights_by_cardinality(n);
  const std::uint64_t others = std::uint64_t{1} << (n - 1);
  double phi = 0.0;
  for (std::uint64_t mask = 0; mask < others; ++mask) {
    const Coalition s(n, insert_gap(mask, i));
    phi += w[s.size()] * (v(s.with(i), x) - v(s, x));
  }
  return phi;
}

ShapleyResult all_shapley(const ValueFunction& v, const Observation& x) {
  const std::size_t n = v.size();
  check_universe(n, 0);
  check_exact_budget(n);

  const auto w = weights_by_cardinality(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> values(count);
  for (std::uint64_t bits = 0; bits < count; ++bits) values[bits] = v(Coalition(n, bits), x);

  ShapleyResult result;
  result.phi.assign(n, 0.0);
  result.evaluations = count;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double phi = 0.0;
    for (std::uint64_t mask = 0; mask < (count >> 1); ++mask) {
      const std::uint64_t s = insert_gap(mask, i);
      phi += w[static_cast<std::size_t>(std::popcount(s))] * (values[s | bit] - values[s]);
    }
    result.phi[i] = phi;
  }
  return result;
}

double truncated_shapley(const ValueFunction& v, const Observation& x, std::size_t i,
                         const std::function<bool(Coalition)>& keep) {
  const std::size_t n = v.size();
  check_universe(n, i);
  check_exact_budget(n);

  const auto w = weights_by_cardinality(n);
  const std::uint64_t others = std::uint64_t{1} << (n - 1);
  double kept_mass = 0.0;
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < others; ++mask) {
    const Coalition s(n, insert_gap(mask, i));
    if (!keep(s)) continue;
    kept_mass += w[s.size()];
    sum += w[s.size()] * (v(s.with(i), x) - v(s, x));
  }
  if (kept_mass == 0.0) throw EmptyKeptSet("truncation predicate keeps no coalition");
  return sum / kept_mass;
}

SampledShapley sampled_shapley_estimate(const ValueFunction& v, const Observation& x,
                                        std::size_t i, std::size_t permutations,
                                        RandomStream& rng) {
  const std::size_t n = v.size();
  check_universe(n, i);
  if (permutations == 0) throw OutOfRange("sampled_shapley needs at least one permutation");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  // Welford running mean and variance of the marginal contributions.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t p = 0; p < permutations; ++p) {
    std::shuffle(order.begin(), order.end(), rng);
    Coalition pred = Coalition::empty(n);
    for (std::size_t j : order) {
      if (j == i) break;
      pred = pred.with(j);
    }
    const double contribution = v(pred.with(i), x) - v(pred, x);
    const double delta = contribution - mean;
    mean += delta / static_cast<double>(p + 1);
    m2 += delta * (contribution - mean);
  }

  SampledShapley out;
  out.value = mean;
  out.permutations = permutations;
  if (permutations > 1) {
    const double var = m2 / static_cast<double>(permutations - 1);
    out.std_error = std::sqrt(var / static_cast<double>(permutations));
  }
  return out;
}

double sampled_shapley(const ValueFunction& v, const Observation& x, std::size_t i,
                       std::size_t permutations, RandomStream& rng) {
  return sampled_shapley_estimate(v, x, i, permutations, rng).value;
}

}  // namespace shapley_loc
