#pragma once

#include <optional>
#include <string_view>

#include "shapley_loc/coalition.hpp"
#include "shapley_loc/observation.hpp"
#include "shapley_loc/random.hpp"

namespace shapley_loc {

enum class AttackKind {
  A,  // constant offset AM
  B,  // Gaussian offset with mean AM and std sigma_a
  C,  // AM plus a Uniform(0, UM) offset
};

char to_char(AttackKind kind) noexcept;
/// Parses "A", "B" or "C". Returns nullopt otherwise.
std::optional<AttackKind> parse_attack_kind(std::string_view text) noexcept;

/// An additive attack on a set of target sensors. Build through the
/// factories, which enforce that sigma_a exists only for B and um only for C.
class AttackSpec {
 public:
  static AttackSpec constant(double am, Coalition targets);
  static AttackSpec gaussian(double am, double sigma_a, Coalition targets);
  static AttackSpec uniform(double am, double um, Coalition targets);

  /// Generic constructor used by config parsing. Throws InvalidAttack.
  AttackSpec(AttackKind kind, double am, std::optional<double> sigma_a, std::optional<double> um,
             Coalition targets);

  AttackKind kind() const noexcept { return kind_; }
  double am() const noexcept { return am_; }
  std::optional<double> sigma_a() const noexcept { return sigma_a_; }
  std::optional<double> um() const noexcept { return um_; }
  Coalition targets() const noexcept { return targets_; }

 private:
  AttackKind kind_;
  double am_;
  std::optional<double> sigma_a_;
  std::optional<double> um_;
  Coalition targets_;
};

/// Copy of x with the attack offset added at every target sensor. Draws one
/// variate per target for kinds B and C, in increasing sensor order.
Observation apply_attack(const AttackSpec& spec, const Observation& x, RandomStream& rng);

}  // namespace shapley_loc
