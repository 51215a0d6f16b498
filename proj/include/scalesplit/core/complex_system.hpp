#pragma once

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/core/vector.hpp"

namespace scalesplit {

/// (W + iT) z expanded into real pairs: (W x - T y, W y + T x).
inline ComplexVector apply_system(const SparseSymMatrix& w, const SparseSymMatrix& t, const ComplexVector& z) {
  check_size(w.size(), t.size(), "apply_system");
  check_size(w.size(), z.size(), "apply_system");
  const std::size_t n = w.size();
  ComplexVector out(n);
  RealVector tmp(n);
  spmv(w, z.re, out.re);
  spmv(t, z.im, tmp);
  axpy(-1.0, tmp, out.re);
  spmv(w, z.im, out.im);
  spmv(t, z.re, tmp);
  axpy(1.0, tmp, out.im);
  return out;
}

/// ||b - (W + iT) z||_2 / ||b||_2 with the complex 2-norm.
inline double residual_relnorm(const SparseSymMatrix& w, const SparseSymMatrix& t, const ComplexVector& b,
                               const ComplexVector& z) {
  check_size(w.size(), b.size(), "residual_relnorm");
  const double nb = norm2(b);
  if (!(nb > 0.0)) throw ZeroRightHandSide();
  ComplexVector r = apply_system(w, t, z);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.re[i] = b.re[i] - r.re[i];
    r.im[i] = b.im[i] - r.im[i];
  }
  return norm2(r) / nb;
}

}  // namespace scalesplit
