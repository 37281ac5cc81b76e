#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "shapley_loc/coalition.hpp"
#include "shapley_loc/observation.hpp"
#include "shapley_loc/random.hpp"
#include "shapley_loc/value_function.hpp"

namespace shapley_loc {

/// Largest universe for which exact enumeration is attempted.
inline constexpr std::size_t kMaxExactUniverse = 24;

struct ShapleyResult {
  std::vector<double> phi;
  /// Number of value-function calls made.
  std::uint64_t evaluations = 0;
};

/// |S|! (n-|S|-1)! / n!, the coalition weight in the Shapley sum.
/// Throws OutOfRange unless 0 <= s_card < n <= 24.
double shapley_weight(std::size_t s_card, std::size_t n);

/// Exact Shapley value of sensor i by enumerating all 2^(n-1) coalitions
/// that exclude i. Throws UniverseTooLarge for n > 24.
double exact_shapley(const ValueFunction& v, const Observation& x, std::size_t i);

/// Shapley values of every sensor. Each of the 2^n coalition values is
/// computed once and shared across sensors.
ShapleyResult all_shapley(const ValueFunction& v, const Observation& x);

/// The Shapley sum restricted to coalitions S (excluding i) for which
/// keep(S) holds, with the kept weights renormalized to sum to one.
/// Throws EmptyKeptSet when keep rejects every coalition.
double truncated_shapley(const ValueFunction& v, const Observation& x, std::size_t i,
                         const std::function<bool(Coalition)>& keep);

struct SampledShapley {
  double value = 0.0;
  /// Standard error of the mean marginal contribution.
  double std_error = 0.0;
  std::size_t permutations = 0;
};

/// Permutation-sampling estimate of sensor i's Shapley value: the mean of
/// v(pred ∪ {i}) - v(pred) over uniformly random orderings.
SampledShapley sampled_shapley_estimate(const ValueFunction& v, const Observation& x,
                                        std::size_t i, std::size_t permutations,
                                        RandomStream& rng);

double sampled_shapley(const ValueFunction& v, const Observation& x, std::size_t i,
                       std::size_t permutations, RandomStream& rng);

}  // namespace shapley_loc
