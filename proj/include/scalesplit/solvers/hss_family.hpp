#pragma once

#include <cstddef>

#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/inner/spd_solver.hpp"
#include "scalesplit/solvers/driver.hpp"

namespace scalesplit {

/// Modified HSS:
///   (alpha I + W) z_half = (alpha I - iT) z + b
///   (alpha I + T) z'     = (alpha I + iW) z_half - i b
class MhssStepper {
 public:
  MhssStepper(const Problem& p, double alpha, const inner::InnerSolveChoice& choice)
      : p_(p),
        alpha_(alpha),
        first_(inner::SpdFactorization::factorize(shifted(1.0, p.w, alpha), choice)),
        second_(inner::SpdFactorization::factorize(shifted(1.0, p.t, alpha), choice)),
        rhs_(p.size()) {}

  void advance(ComplexVector& z) {
    const std::size_t n = z.size();
    const auto& f = p_.b.re;
    const auto& g = p_.b.im;
    spmv(p_.t, z.im, rhs_.re);
    spmv(p_.t, z.re, rhs_.im);
    for (std::size_t i = 0; i < n; ++i) {
      rhs_.re[i] = alpha_ * z.re[i] + rhs_.re[i] + f[i];
      rhs_.im[i] = alpha_ * z.im[i] - rhs_.im[i] + g[i];
    }
    const ComplexVector half = first_.solve_complex(rhs_);
    spmv(p_.w, half.im, rhs_.re);
    spmv(p_.w, half.re, rhs_.im);
    for (std::size_t i = 0; i < n; ++i) {
      rhs_.re[i] = alpha_ * half.re[i] - rhs_.re[i] + g[i];
      rhs_.im[i] = alpha_ * half.im[i] + rhs_.im[i] - f[i];
    }
    z = second_.solve_complex(rhs_);
  }

  std::size_t real_solves() const { return first_.real_solve_count() + second_.real_solve_count(); }

 private:
  const Problem& p_;
  double alpha_;
  inner::SpdFactorization first_;   // alpha I + W
  inner::SpdFactorization second_;  // alpha I + T
  ComplexVector rhs_;
};

/// Preconditioned MHSS with V = W:
///   ((alpha + 1) W) z_half = (alpha W - iT) z + b
///   (alpha W + T) z'       = (alpha + i) W z_half - i b
/// The first matrix is factorized as W; the scalar is applied after the solve.
class PmhssStepper {
 public:
  PmhssStepper(const Problem& p, double alpha, const inner::InnerSolveChoice& choice)
      : p_(p),
        alpha_(alpha),
        w_solver_(inner::SpdFactorization::factorize(p.w, choice)),
        second_(inner::SpdFactorization::factorize(linear_combination(alpha, p.w, 1.0, p.t), choice)),
        rhs_(p.size()),
        wz_(p.size()) {}

  void advance(ComplexVector& z) {
    const std::size_t n = z.size();
    const auto& f = p_.b.re;
    const auto& g = p_.b.im;
    spmv(p_.w, z.re, wz_.re);
    spmv(p_.w, z.im, wz_.im);
    spmv(p_.t, z.im, rhs_.re);
    spmv(p_.t, z.re, rhs_.im);
    for (std::size_t i = 0; i < n; ++i) {
      rhs_.re[i] = alpha_ * wz_.re[i] + rhs_.re[i] + f[i];
      rhs_.im[i] = alpha_ * wz_.im[i] - rhs_.im[i] + g[i];
    }
    ComplexVector half = w_solver_.solve_complex(rhs_);
    const double inv = 1.0 / (alpha_ + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      half.re[i] *= inv;
      half.im[i] *= inv;
    }
    spmv(p_.w, half.re, wz_.re);
    spmv(p_.w, half.im, wz_.im);
    for (std::size_t i = 0; i < n; ++i) {
      rhs_.re[i] = alpha_ * wz_.re[i] - wz_.im[i] + g[i];
      rhs_.im[i] = alpha_ * wz_.im[i] + wz_.re[i] - f[i];
    }
    z = second_.solve_complex(rhs_);
  }

  std::size_t real_solves() const { return w_solver_.real_solve_count() + second_.real_solve_count(); }

 private:
  const Problem& p_;
  double alpha_;
  inner::SpdFactorization w_solver_;  // W
  inner::SpdFactorization second_;    // alpha W + T
  ComplexVector rhs_;
  ComplexVector wz_;
};

inline SolveReport mhss_solve(const Problem& p, const SolverConfig& cfg) {
  expect_method(cfg, MethodKind::mhss);
  p.validate();
  const auto start = detail::Clock::now();
  MhssStepper stepper(p, cfg.alpha, cfg.inner);
  return drive(p, cfg, stepper, detail::seconds_since(start));
}

inline SolveReport pmhss_solve(const Problem& p, const SolverConfig& cfg) {
  expect_method(cfg, MethodKind::pmhss);
  p.validate();
  const auto start = detail::Clock::now();
  PmhssStepper stepper(p, cfg.alpha, cfg.inner);
  return drive(p, cfg, stepper, detail::seconds_since(start));
}

}  // namespace scalesplit
