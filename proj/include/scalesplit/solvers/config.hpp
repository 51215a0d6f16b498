#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/vector.hpp"
#include "scalesplit/inner/spd_solver.hpp"

namespace scalesplit {

enum class MethodKind { tscsp, scsp, mhss, pmhss, gsor };

inline constexpr std::array<MethodKind, 5> kAllMethods = {MethodKind::tscsp, MethodKind::scsp, MethodKind::mhss,
                                                          MethodKind::pmhss, MethodKind::gsor};

inline std::string_view to_string(MethodKind m) {
  switch (m) {
    case MethodKind::tscsp: return "tscsp";
    case MethodKind::scsp: return "scsp";
    case MethodKind::mhss: return "mhss";
    case MethodKind::pmhss: return "pmhss";
    case MethodKind::gsor: return "gsor";
  }
  return "?";
}

inline std::string display_name(MethodKind m) {
  std::string s(to_string(m));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

inline MethodKind parse_method(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto m : kAllMethods)
    if (to_string(m) == s) return m;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

struct SolverConfig {
  MethodKind method = MethodKind::tscsp;
  double alpha = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iterations = 5000;
  inner::InnerSolveChoice inner;
  bool record_history = false;
  /// Relative residual above which a run is abandoned as divergent.
  double divergence_threshold = 1e8;

  void validate() const {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw InvalidArgument("tolerance must lie in (0, 1)");
    if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
    inner.validate();
  }
};

struct SolveReport {
  MethodKind method = MethodKind::tscsp;
  double alpha = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool diverged = false;
  double final_relative_residual = 1.0;
  /// iterations + 1 entries when recorded; entry 0 is the initial guess.
  std::vector<double> residual_history;
  double setup_seconds = 0.0;
  double iterate_seconds = 0.0;
  /// Real SPD solves performed during the iteration phase.
  std::size_t inner_solves = 0;
  ComplexVector solution;

  double total_seconds() const noexcept { return setup_seconds + iterate_seconds; }
};

}  // namespace scalesplit
