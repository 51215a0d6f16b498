#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "scalesplit/core/dense.hpp"
#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/solvers/config.hpp"
#include "scalesplit/spectral/optimal_alpha.hpp"

// Dense O(n^3) references for small problems: generalized eigenvalues of the
// pencil (T, W), exact iteration matrices of every method and the TSCSP
// splitting pair. Orders above the oracle cap are refused.

namespace scalesplit::spectral {

/// Ascending eigenvalues of T v = mu W v via Cholesky reduction of W.
inline std::vector<double> generalized_eigs(const SparseSymMatrix& w, const SparseSymMatrix& t,
                                            std::size_t cap = kDefaultOracleCap) {
  check_size(w.size(), t.size(), "generalized_eigs");
  check_oracle_cap(w.size(), cap);
  if (w.size() == 0) return {};
  const Eigen::MatrixXd wd = to_dense(w, cap);
  const Eigen::MatrixXd td = to_dense(t, cap);
  Eigen::LLT<Eigen::MatrixXd> llt(wd);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("W is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(td, wd, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw NotPositiveDefinite("generalized eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline SpectralInfo spectral_info(const SparseSymMatrix& w, const SparseSymMatrix& t,
                                  std::size_t cap = kDefaultOracleCap) {
  return optimal_alpha(generalized_eigs(w, t, cap));
}

/// Upper end of the GSOR convergence interval, 2 / (1 + rho(W^{-1} T)).
inline double gsor_convergence_interval(const SparseSymMatrix& w, const SparseSymMatrix& t,
                                        std::size_t cap = kDefaultOracleCap) {
  const auto mus = generalized_eigs(w, t, cap);
  double rho = 0.0;
  for (double mu : mus) rho = std::max(rho, std::abs(mu));
  return 2.0 / (1.0 + rho);
}

namespace detail {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
constexpr std::complex<double> I{0.0, 1.0};

inline Mat solve_checked(const Mat& a, const Mat& rhs, const char* what) {
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) throw SingularMatrix(std::string(what) + " is singular");
  return lu.solve(rhs);
}

struct DensePair {
  Mat w;
  Mat t;
  Mat id;
};

inline DensePair densify(const SparseSymMatrix& w, const SparseSymMatrix& t, std::size_t cap) {
  check_size(w.size(), t.size(), "dense oracle");
  const auto n = static_cast<Eigen::Index>(w.size());
  return {to_dense(w, cap).cast<std::complex<double>>(), to_dense(t, cap).cast<std::complex<double>>(),
          Mat::Identity(n, n)};
}

}  // namespace detail

/// Dense affine map z -> G z + c of one full outer step.
/// For GSOR the map acts on the stacked real vector (x; y) of length 2n.
struct DenseFixedPoint {
  DenseComplexMatrix g;
  Eigen::VectorXcd c;
};

inline DenseFixedPoint dense_fixed_point(const SparseSymMatrix& w, const SparseSymMatrix& t, double alpha,
                                         MethodKind method, const ComplexVector& b,
                                         std::size_t cap = kDefaultOracleCap) {
  using detail::I;
  using detail::Mat;
  using detail::Vec;
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const auto [W, T, Id] = detail::densify(w, t, cap);
  const Vec bv = to_eigen(b);
  const double a = alpha;
  switch (method) {
    case MethodKind::tscsp: {
      // G = (W + aT)^{-1} (T - aW) (aW + T)^{-1} (W - aT)
      // c = 2a (W + aT)^{-1} (W - iT) (aW + T)^{-1} b
      const Mat inner = detail::solve_checked(a * W + T, W - a * T, "alpha W + T");
      Mat g = detail::solve_checked(W + a * T, (T - a * W) * inner, "W + alpha T");
      const Mat half_b = detail::solve_checked(a * W + T, bv, "alpha W + T");
      Vec c = 2.0 * a * detail::solve_checked(W + a * T, (W - I * T) * half_b, "W + alpha T");
      return {DenseComplexMatrix(std::move(g), cap), std::move(c)};
    }
    case MethodKind::scsp: {
      Mat g = detail::solve_checked(a * W + T, I * (W - a * T), "alpha W + T");
      Vec c = detail::solve_checked(a * W + T, (a - I) * bv, "alpha W + T");
      return {DenseComplexMatrix(std::move(g), cap), std::move(c)};
    }
    case MethodKind::mhss: {
      const Mat first = detail::solve_checked(a * Id + W, a * Id - I * T, "alpha I + W");
      const Mat first_b = detail::solve_checked(a * Id + W, bv, "alpha I + W");
      Mat g = detail::solve_checked(a * Id + T, (a * Id + I * W) * first, "alpha I + T");
      Vec c = detail::solve_checked(a * Id + T, (a * Id + I * W) * first_b - I * bv, "alpha I + T");
      return {DenseComplexMatrix(std::move(g), cap), std::move(c)};
    }
    case MethodKind::pmhss: {
      const Mat first = detail::solve_checked((a + 1.0) * W, a * W - I * T, "(alpha + 1) W");
      const Mat first_b = detail::solve_checked((a + 1.0) * W, bv, "(alpha + 1) W");
      Mat g = detail::solve_checked(a * W + T, (a * W + I * W) * first, "alpha W + T");
      Vec c = detail::solve_checked(a * W + T, (a * W + I * W) * first_b - I * bv, "alpha W + T");
      return {DenseComplexMatrix(std::move(g), cap), std::move(c)};
    }
    case MethodKind::gsor: {
      const auto n = W.rows();
      const Mat s = detail::solve_checked(W, T, "W");
      const Mat winv_f = detail::solve_checked(W, bv.real().cast<std::complex<double>>(), "W");
      const Mat winv_g = detail::solve_checked(W, bv.imag().cast<std::complex<double>>(), "W");
      Mat g(2 * n, 2 * n);
      g.topLeftCorner(n, n) = (1.0 - a) * Id;
      g.topRightCorner(n, n) = a * s;
      g.bottomLeftCorner(n, n) = -a * (1.0 - a) * s;
      g.bottomRightCorner(n, n) = (1.0 - a) * Id - a * a * s * s;
      Vec c(2 * n);
      c.head(n) = a * winv_f;
      c.tail(n) = -a * a * s * winv_f + a * winv_g;
      return {DenseComplexMatrix(std::move(g), 2 * cap), std::move(c)};
    }
  }
  throw InvalidArgument("unknown method");
}

/// Exact dense iteration matrix of one full outer step.
inline DenseComplexMatrix dense_iteration_matrix(const SparseSymMatrix& w, const SparseSymMatrix& t, double alpha,
                                                 MethodKind method, std::size_t cap = kDefaultOracleCap) {
  ComplexVector zero_rhs(w.size());
  if (w.size() > 0) zero_rhs.re[0] = 1.0;
  return dense_fixed_point(w, t, alpha, method, zero_rhs, cap).g;
}

/// The TSCSP splitting A = M - N with
///   M = (1/2a) (T + aW)(W - iT)^{-1}(W + aT),
///   N = (1/2a) (T - aW)(W - iT)^{-1}(W - aT).
inline std::pair<DenseComplexMatrix, DenseComplexMatrix> splitting_matrices(const SparseSymMatrix& w,
                                                                            const SparseSymMatrix& t, double alpha,
                                                                            std::size_t cap = kDefaultOracleCap) {
  using detail::I;
  using detail::Mat;
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const auto [W, T, Id] = detail::densify(w, t, cap);
  const double a = alpha;
  const Mat m = (T + a * W) * detail::solve_checked(W - I * T, W + a * T, "W - iT") / (2.0 * a);
  const Mat nn = (T - a * W) * detail::solve_checked(W - I * T, W - a * T, "W - iT") / (2.0 * a);
  return {DenseComplexMatrix(m, cap), DenseComplexMatrix(nn, cap)};
}

/// W + iT as a dense complex matrix.
inline DenseComplexMatrix dense_system(const SparseSymMatrix& w, const SparseSymMatrix& t,
                                       std::size_t cap = kDefaultOracleCap) {
  const auto [W, T, Id] = detail::densify(w, t, cap);
  return DenseComplexMatrix(W + detail::I * T, cap);
}

}  // namespace scalesplit::spectral
