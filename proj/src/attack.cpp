#include "shapley_loc/attack.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace shapley_loc {

char to_char(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::A: return 'A';
    case AttackKind::B: return 'B';
    case AttackKind::C: return 'C';
  }
  return '?';
}

std::optional<AttackKind> parse_attack_kind(std::string_view text) noexcept {
  if (text == "A" || text == "a") return AttackKind::A;
  if (text == "B" || text == "b") return AttackKind::B;
  if (text == "C" || text == "c") return AttackKind::C;
  return std::nullopt;
}

AttackSpec::AttackSpec(AttackKind kind, double am, std::optional<double> sigma_a,
                       std::optional<double> um, Coalition targets)
    : kind_(kind), am_(am), sigma_a_(sigma_a), um_(um), targets_(targets) {
  if (!std::isfinite(am)) throw InvalidAttack("am must be finite");
  if (targets.is_empty()) throw InvalidAttack("attack needs at least one target sensor");

  if (kind == AttackKind::B) {
    if (!sigma_a) throw InvalidAttack("sigma_a is required for a type B attack");
    if (!std::isfinite(*sigma_a) || *sigma_a < 0.0) {
      throw InvalidAttack("sigma_a must be a non-negative finite number");
    }
  } else if (sigma_a) {
    throw InvalidAttack("sigma_a only applies to type B attacks");
  }

  if (kind == AttackKind::C) {
    if (!um) throw InvalidAttack("um is required for a type C attack");
    if (!std::isfinite(*um) || *um < 0.0) {
      throw InvalidAttack("um must be a non-negative finite number");
    }
  } else if (um) {
    throw InvalidAttack("um only applies to type C attacks");
  }
}

AttackSpec AttackSpec::constant(double am, Coalition targets) {
  return {AttackKind::A, am, std::nullopt, std::nullopt, targets};
}

AttackSpec AttackSpec::gaussian(double am, double sigma_a, Coalition targets) {
  return {AttackKind::B, am, sigma_a, std::nullopt, targets};
}

AttackSpec AttackSpec::uniform(double am, double um, Coalition targets) {
  return {AttackKind::C, am, std::nullopt, um, targets};
}

Observation apply_attack(const AttackSpec& spec, const Observation& x, RandomStream& rng) {
  if (spec.targets().universe() != x.size()) {
    throw DimensionMismatch("attack targets a universe of " +
                            std::to_string(spec.targets().universe()) +
                            " sensors but observation has " + std::to_string(x.size()));
  }
  std::vector<double> out(x.values().begin(), x.values().end());
  spec.targets().for_each([&](std::size_t j) {
    switch (spec.kind()) {
      case AttackKind::A:
        out[j] += spec.am();
        break;
      case AttackKind::B:
        out[j] += spec.am() + *spec.sigma_a() * rng.standard_normal();
        break;
      case AttackKind::C:
        out[j] = out[j] + rng.uniform01() * *spec.um() + spec.am();
        break;
    }
  });
  return Observation(std::move(out));
}

}  // namespace shapley_loc
