#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "shapley_loc/errors.hpp"

namespace shapley_loc {

/// A subset of sensor indices 0..n-1 stored as a bit set.
class Coalition {
 public:
  static constexpr std::size_t kMaxUniverse = 64;

  Coalition() = default;

  Coalition(std::size_t n, std::uint64_t bits) : bits_(bits), n_(n) {
    if (n > kMaxUniverse) throw OutOfRange("coalition universe exceeds 64 sensors");
    if (n < kMaxUniverse && (bits >> n) != 0) {
      throw OutOfRange("coalition has members outside the universe of " + std::to_string(n));
    }
  }

  static Coalition empty(std::size_t n) { return {n, 0}; }

  static Coalition full(std::size_t n) {
    return {n, n == kMaxUniverse ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  static Coalition of(std::size_t n, std::initializer_list<std::size_t> members) {
    Coalition c = empty(n);
    for (auto m : members) c = c.with(m);
    return c;
  }

  std::uint64_t bits() const noexcept { return bits_; }
  std::size_t universe() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool is_empty() const noexcept { return bits_ == 0; }

  bool contains(std::size_t i) const noexcept {
    return i < n_ && ((bits_ >> i) & 1U) != 0;
  }

  Coalition with(std::size_t i) const {
    check_index(i);
    return {n_, bits_ | (std::uint64_t{1} << i), Unchecked{}};
  }

  Coalition without(std::size_t i) const {
    check_index(i);
    return {n_, bits_ & ~(std::uint64_t{1} << i), Unchecked{}};
  }

  /// Calls f(index) for every member in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      f(static_cast<std::size_t>(std::countr_zero(rest)));
    }
  }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  struct Unchecked {};
  Coalition(std::size_t n, std::uint64_t bits, Unchecked) noexcept : bits_(bits), n_(n) {}

  void check_index(std::size_t i) const {
    if (i >= n_) {
      throw OutOfRange("sensor index " + std::to_string(i) + " outside universe of " +
                       std::to_string(n_));
    }
  }

  std::uint64_t bits_ = 0;
  std::size_t n_ = 0;
};

}  // namespace shapley_loc
