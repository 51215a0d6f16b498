#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/core/vector.hpp"

namespace scalesplit::inner {

struct CgOutcome {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Unpreconditioned conjugate gradient from a zero initial guess. Stops when
/// ||b - A x|| <= tol * ||b|| (recursively updated residual). Throws
/// CgDidNotConverge when max_iterations is exhausted.
inline CgOutcome conjugate_gradient(const SparseSymMatrix& a, std::span<const double> b, std::span<double> x,
                                    double tol, std::size_t max_iterations) {
  const std::size_t n = a.size();
  check_size(n, b.size(), "conjugate_gradient");
  check_size(n, x.size(), "conjugate_gradient");
  std::fill(x.begin(), x.end(), 0.0);
  const double nb = norm2(b);
  if (nb == 0.0) return {};

  RealVector r(b.begin(), b.end()), p(r), ap(n);
  double rr = dot(r, r);
  const double target = tol * nb;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    spmv(a, p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw NotPositiveDefinite("conjugate gradient met nonpositive curvature");
    const double step = rr / pap;
    axpy(step, p, x);
    axpy(-step, ap, r);
    const double rr_new = dot(r, r);
    if (std::sqrt(rr_new) <= target) return {it, std::sqrt(rr_new) / nb};
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  throw CgDidNotConverge(max_iterations, std::sqrt(rr) / nb);
}

}  // namespace scalesplit::inner
