#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "scalesplit/bench/table.hpp"
#include "scalesplit/core/error.hpp"
#include "scalesplit/spectral/grid_search.hpp"

namespace scalesplit::bench {

inline constexpr std::size_t kDefaultSideCap = 256;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view s, const char* what) {
  s = trim(s);
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
  }
}

inline std::size_t parse_count(std::string_view s, const char* what) {
  s = trim(s);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InvalidArgument(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Parses "32,64" or "32^2,64^2". For examples 1-3 an entry is the grid side
/// m; for example 4 a plain entry is the order n and "m^2" means n = m*m.
inline std::vector<std::size_t> parse_sizes(std::string_view text, int example) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        detail::trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) {
      const std::size_t caret = item.find('^');
      std::size_t v = 0;
      if (caret != std::string_view::npos) {
        if (detail::trim(item.substr(caret + 1)) != "2") throw InvalidArgument("only m^2 sizes are supported");
        const std::size_t m = detail::parse_count(item.substr(0, caret), "size");
        v = example == 4 ? m * m : m;
      } else {
        v = detail::parse_count(item, "size");
      }
      if (v == 0) throw InvalidArgument("sizes must be positive");
      out.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InvalidArgument("size list is empty");
  return out;
}

/// Parses "lo:hi:step".
inline spectral::AlphaGrid parse_grid(std::string_view text) {
  const std::size_t a = text.find(':');
  const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos)
    throw InvalidArgument("grid must be lo:hi:step");
  spectral::AlphaGrid g;
  g.lo = detail::parse_double(text.substr(0, a), "grid lower bound");
  g.hi = detail::parse_double(text.substr(a + 1, b - a - 1), "grid upper bound");
  g.step = detail::parse_double(text.substr(b + 1), "grid step");
  g.validate();
  return g;
}

/// Parses a float or one of "paper", "grid", "theoretical". A numeric value
/// must be positive.
inline AlphaChoice parse_alpha(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s == "paper") return {AlphaMode::tabulated, 0.0};
  if (s == "grid") return {AlphaMode::grid, 0.0};
  if (s == "theoretical") return {AlphaMode::theoretical, 0.0};
  const double v = detail::parse_double(s, "alpha");
  if (!(v > 0.0)) throw InvalidArgument("alpha must be positive");
  return {AlphaMode::explicit_value, v};
}

inline std::vector<MethodKind> parse_methods(std::string_view text) {
  if (detail::trim(text) == "all") return {kAllMethods.begin(), kAllMethods.end()};
  return {parse_method(detail::trim(text))};
}

/// Rejects sizes above the desk-scale cap (grid side m, or n for example 4
/// measured against cap^2) unless large runs are allowed.
inline void check_size_cap(int example, std::size_t size, bool allow_large, std::size_t side_cap = kDefaultSideCap) {
  if (allow_large) return;
  const std::size_t limit = example == 4 ? side_cap * side_cap : side_cap;
  if (size > limit)
    throw InvalidArgument("size " + std::to_string(size) + " exceeds the default cap (m <= " +
                          std::to_string(side_cap) + "); pass --allow-large to override");
}

}  // namespace scalesplit::bench
