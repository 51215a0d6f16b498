#pragma once

#include <cstddef>

#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/inner/spd_solver.hpp"
#include "scalesplit/solvers/driver.hpp"

namespace scalesplit {

namespace detail {

// out = i*D*z + c, i.e. (-D z.im + c.re, D z.re + c.im)
inline void rotate_apply_add(const SparseSymMatrix& d, const ComplexVector& z, const ComplexVector& c,
                             ComplexVector& out) {
  spmv(d, z.im, out.re);
  spmv(d, z.re, out.im);
  for (std::size_t i = 0; i < z.size(); ++i) {
    out.re[i] = c.re[i] - out.re[i];
    out.im[i] = c.im[i] + out.im[i];
  }
}

}  // namespace detail

/// Scale-splitting half step from the (alpha - i)-scaled system:
///   (alpha W + T) z' = i (W - alpha T) z + (alpha - i) b
class ScspStepper {
 public:
  ScspStepper(const Problem& p, double alpha, const inner::InnerSolveChoice& choice)
      : rotation_(linear_combination(1.0, p.w, -alpha, p.t)),
        solver_(inner::SpdFactorization::factorize(linear_combination(alpha, p.w, 1.0, p.t), choice)),
        shift_(p.size()),
        rhs_(p.size()) {
    const auto& f = p.b.re;
    const auto& g = p.b.im;
    for (std::size_t i = 0; i < p.size(); ++i) {
      shift_.re[i] = alpha * f[i] + g[i];
      shift_.im[i] = alpha * g[i] - f[i];
    }
  }

  void advance(ComplexVector& z) {
    detail::rotate_apply_add(rotation_, z, shift_, rhs_);
    z = solver_.solve_complex(rhs_);
  }

  std::size_t real_solves() const { return solver_.real_solve_count(); }

 private:
  SparseSymMatrix rotation_;  // W - alpha T
  inner::SpdFactorization solver_;  // alpha W + T
  ComplexVector shift_;  // (alpha - i) b
  ComplexVector rhs_;
};

/// Two-step scale splitting: the SCSP half step followed by the
/// (1 - alpha i)-scaled step
///   (W + alpha T) z' = i (alpha W - T) z_half + (1 - alpha i) b
class TscspStepper {
 public:
  TscspStepper(const Problem& p, double alpha, const inner::InnerSolveChoice& choice)
      : first_(p, alpha, choice),
        rotation_(linear_combination(alpha, p.w, -1.0, p.t)),
        solver_(inner::SpdFactorization::factorize(linear_combination(1.0, p.w, alpha, p.t), choice)),
        shift_(p.size()),
        rhs_(p.size()) {
    const auto& f = p.b.re;
    const auto& g = p.b.im;
    for (std::size_t i = 0; i < p.size(); ++i) {
      shift_.re[i] = f[i] + alpha * g[i];
      shift_.im[i] = g[i] - alpha * f[i];
    }
  }

  void first_half(ComplexVector& z) { first_.advance(z); }

  void second_half(ComplexVector& z) {
    detail::rotate_apply_add(rotation_, z, shift_, rhs_);
    z = solver_.solve_complex(rhs_);
  }

  void advance(ComplexVector& z) {
    first_half(z);
    second_half(z);
  }

  std::size_t real_solves() const { return first_.real_solves() + solver_.real_solve_count(); }

 private:
  ScspStepper first_;
  SparseSymMatrix rotation_;  // alpha W - T
  inner::SpdFactorization solver_;  // W + alpha T
  ComplexVector shift_;  // (1 - alpha i) b
  ComplexVector rhs_;
};

inline SolveReport scsp_solve(const Problem& p, const SolverConfig& cfg) {
  expect_method(cfg, MethodKind::scsp);
  p.validate();
  const auto start = detail::Clock::now();
  ScspStepper stepper(p, cfg.alpha, cfg.inner);
  return drive(p, cfg, stepper, detail::seconds_since(start));
}

inline SolveReport tscsp_solve(const Problem& p, const SolverConfig& cfg) {
  expect_method(cfg, MethodKind::tscsp);
  p.validate();
  const auto start = detail::Clock::now();
  TscspStepper stepper(p, cfg.alpha, cfg.inner);
  return drive(p, cfg, stepper, detail::seconds_since(start));
}

}  // namespace scalesplit
