#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/problems/problem.hpp"
#include "scalesplit/solvers/run.hpp"

namespace scalesplit::spectral {

struct AlphaGrid {
  double lo = 0.01;
  double hi = 2.0;
  double step = 0.01;

  void validate() const {
    if (!(lo > 0.0)) throw InvalidArgument("grid lower bound must be positive");
    if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
    if (!(hi > lo)) throw InvalidArgument("grid upper bound must exceed the lower bound");
  }

  /// lo, lo + step, ..., up to hi inclusive; values rounded to 1e-12 so that
  /// e.g. the 46th point of (0.01, step 0.01) is exactly 0.46.
  std::vector<double> points() const {
    validate();
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
      out[k] = std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
    return out;
  }
};

struct GridPoint {
  double alpha = 0.0;
  std::size_t iterations = 0;  // max_iterations + 1 when the run failed
  bool converged = false;
};

struct TuneResult {
  double best_alpha = 0.0;
  std::size_t best_iterations = 0;
  std::vector<GridPoint> grid;
};

/// Runs the solver at every grid alpha and returns the one with the fewest
/// iterations; ties go to the smaller alpha. Unconverged, divergent or failed
/// runs count as max_iterations + 1. Grid points may be evaluated on several
/// threads; the result does not depend on the thread count.
inline TuneResult grid_search_alpha(const Problem& p, MethodKind method, const AlphaGrid& grid,
                                    SolverConfig base = {}, unsigned threads = 1) {
  base.method = method;
  base.record_history = false;
  const std::vector<double> alphas = grid.points();
  TuneResult result;
  result.grid.resize(alphas.size());

  auto evaluate = [&](std::size_t idx) {
    SolverConfig cfg = base;
    cfg.alpha = alphas[idx];
    GridPoint gp{alphas[idx], base.max_iterations + 1, false};
    try {
      const SolveReport r = run(p, cfg);
      if (r.converged) {
        gp.iterations = r.iterations;
        gp.converged = true;
      }
    } catch (const NotPositiveDefinite&) {
    } catch (const CgDidNotConverge&) {
    }
    result.grid[idx] = gp;
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(alphas.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < alphas.size(); ++i) evaluate(i);
  } else {
    std::vector<std::future<void>> jobs;
    jobs.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < alphas.size(); i += threads) evaluate(i);
      }));
    for (auto& j : jobs) j.get();
  }

  const auto best = std::min_element(result.grid.begin(), result.grid.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.iterations != b.iterations ? a.iterations < b.iterations : a.alpha < b.alpha;
  });
  if (!best->converged) throw AllGridPointsFailed();
  result.best_alpha = best->alpha;
  result.best_iterations = best->iterations;
  return result;
}

}  // namespace scalesplit::spectral
