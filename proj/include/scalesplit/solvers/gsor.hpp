#pragma once

#include <cstddef>

#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/inner/spd_solver.hpp"
#include "scalesplit/solvers/driver.hpp"

namespace scalesplit {

/// Generalized SOR on the real 2x2 block form, x sweep then y sweep:
///   W x' = (1 - alpha) W x + alpha T y  + alpha f
///   W y' = -alpha T x'     + (1 - alpha) W y + alpha g
/// Converges iff 0 < alpha < 2 / (1 + rho(W^{-1} T)).
class GsorStepper {
 public:
  GsorStepper(const Problem& p, double alpha, const inner::InnerSolveChoice& choice)
      : p_(p), alpha_(alpha), w_solver_(inner::SpdFactorization::factorize(p.w, choice)), rhs_(p.size()),
        wv_(p.size()), tv_(p.size()) {}

  void advance(ComplexVector& z) {
    const std::size_t n = z.size();
    const auto& f = p_.b.re;
    const auto& g = p_.b.im;
    spmv(p_.w, z.re, wv_);
    spmv(p_.t, z.im, tv_);
    for (std::size_t i = 0; i < n; ++i) rhs_[i] = (1.0 - alpha_) * wv_[i] + alpha_ * tv_[i] + alpha_ * f[i];
    w_solver_.solve_real(rhs_, z.re);
    spmv(p_.t, z.re, tv_);
    spmv(p_.w, z.im, wv_);
    for (std::size_t i = 0; i < n; ++i) rhs_[i] = -alpha_ * tv_[i] + (1.0 - alpha_) * wv_[i] + alpha_ * g[i];
    w_solver_.solve_real(rhs_, z.im);
  }

  std::size_t real_solves() const { return w_solver_.real_solve_count(); }

 private:
  const Problem& p_;
  double alpha_;
  inner::SpdFactorization w_solver_;
  RealVector rhs_;
  RealVector wv_;
  RealVector tv_;
};

inline SolveReport gsor_solve(const Problem& p, const SolverConfig& cfg) {
  expect_method(cfg, MethodKind::gsor);
  p.validate();
  const auto start = detail::Clock::now();
  GsorStepper stepper(p, cfg.alpha, cfg.inner);
  return drive(p, cfg, stepper, detail::seconds_since(start));
}

}  // namespace scalesplit
