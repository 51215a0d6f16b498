#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "scalesplit/core/dense.hpp"
#include "scalesplit/problems/problem.hpp"

namespace scalesplit {

struct DefinitenessReport {
  double w_min_eigenvalue = 0.0;
  double t_min_eigenvalue = 0.0;
  bool w_positive_definite = false;
  bool t_positive_semidefinite = false;
  bool t_positive_definite = false;
};

inline double smallest_eigenvalue(const SparseSymMatrix& a, std::size_t cap = kDefaultOracleCap) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(a, cap), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Dense definiteness check of W and T; only for orders within the cap.
inline DefinitenessReport check_problem(const Problem& p, std::size_t cap = kDefaultOracleCap) {
  DefinitenessReport r;
  r.w_min_eigenvalue = smallest_eigenvalue(p.w, cap);
  r.t_min_eigenvalue = smallest_eigenvalue(p.t, cap);
  r.w_positive_definite = r.w_min_eigenvalue > 0.0;
  r.t_positive_semidefinite = r.t_min_eigenvalue >= -1e-12;
  r.t_positive_definite = r.t_min_eigenvalue > 0.0;
  return r;
}

}  // namespace scalesplit
