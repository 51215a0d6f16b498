#pragma once

#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <utility>

#include "scalesplit/core/complex_system.hpp"
#include "scalesplit/problems/problem.hpp"
#include "scalesplit/solvers/config.hpp"

namespace scalesplit {

/// One outer step of a stationary method, with its cached factorizations.
template <class S>
concept Stepper = requires(S& s, ComplexVector& z, const S& cs) {
  { s.advance(z) } -> std::same_as<void>;
  { cs.real_solves() } -> std::convertible_to<std::size_t>;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace detail

inline void expect_method(const SolverConfig& cfg, MethodKind expected) {
  if (cfg.method != expected)
    throw InvalidArgument("config method " + std::string(to_string(cfg.method)) + " passed to the " +
                          std::string(to_string(expected)) + " solver");
  cfg.validate();
}

/// Shared outer loop: null initial guess, relative residual checked after
/// every full outer step, early exit on convergence or divergence.
template <Stepper S>
SolveReport drive(const Problem& p, const SolverConfig& cfg, S& stepper, double setup_seconds) {
  SolveReport report;
  report.method = cfg.method;
  report.alpha = cfg.alpha;
  report.setup_seconds = setup_seconds;

  const auto start = detail::Clock::now();
  const std::size_t solves_before = stepper.real_solves();
  ComplexVector z(p.size());
  double relres = residual_relnorm(p.w, p.t, p.b, z);
  if (cfg.record_history) {
    report.residual_history.reserve(cfg.max_iterations + 1);
    report.residual_history.push_back(relres);
  }
  std::size_t k = 0;
  while (k < cfg.max_iterations) {
    stepper.advance(z);
    ++k;
    relres = residual_relnorm(p.w, p.t, p.b, z);
    if (cfg.record_history) report.residual_history.push_back(relres);
    if (relres < cfg.tolerance) {
      report.converged = true;
      break;
    }
    if (!std::isfinite(relres) || relres > cfg.divergence_threshold) {
      report.diverged = true;
      break;
    }
  }
  report.iterations = k;
  report.final_relative_residual = relres;
  report.inner_solves = stepper.real_solves() - solves_before;
  report.iterate_seconds = detail::seconds_since(start);
  report.solution = std::move(z);
  return report;
}

}  // namespace scalesplit
