#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace shapley_loc {

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), end};
}

/// Fixed number of significant digits, for human-facing tables.
inline std::string format_significant(double value, int digits) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 48> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, digits);
  return {buf.data(), end};
}

/// Strict parse: the whole token must be a number. Accepts "inf"/"-inf".
inline std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || first == ptr) return std::nullopt;
  return value;
}

template <typename Int>
std::optional<Int> parse_integer(std::string_view text) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

}  // namespace shapley_loc
