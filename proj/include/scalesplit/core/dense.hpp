#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/core/vector.hpp"

namespace scalesplit {

/// Largest order any dense oracle will build unless told otherwise.
inline constexpr std::size_t kDefaultOracleCap = 400;

inline void check_oracle_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw OracleCapExceeded(n, cap);
}

/// Square complex dense matrix used by the small-scale oracles only.
class DenseComplexMatrix {
 public:
  explicit DenseComplexMatrix(Eigen::MatrixXcd m, std::size_t cap = kDefaultOracleCap) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw DimensionMismatch(static_cast<std::size_t>(m_.rows()), static_cast<std::size_t>(m_.cols()),
                              "DenseComplexMatrix");
    check_oracle_cap(size(), cap);
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  double frobenius_distance(const DenseComplexMatrix& other) const { return (m_ - other.m_).norm(); }

  /// Largest eigenvalue modulus.
  double spectral_radius() const {
    if (m_.rows() == 0) return 0.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m_, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

 private:
  Eigen::MatrixXcd m_;
};

inline Eigen::MatrixXd to_dense(const SparseSymMatrix& a, std::size_t cap = kDefaultOracleCap) {
  check_oracle_cap(a.size(), cap);
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : a.triplets()) d(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
  return d;
}

inline Eigen::VectorXcd to_eigen(const ComplexVector& z) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) v(static_cast<Eigen::Index>(i)) = {z.re[i], z.im[i]};
  return v;
}

inline ComplexVector from_eigen(const Eigen::VectorXcd& v) {
  ComplexVector z(static_cast<std::size_t>(v.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    z.re[i] = v(static_cast<Eigen::Index>(i)).real();
    z.im[i] = v(static_cast<Eigen::Index>(i)).imag();
  }
  return z;
}

}  // namespace scalesplit
