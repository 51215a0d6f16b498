#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "scalesplit/core/complex_system.hpp"
#include "scalesplit/core/dense.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/problems/examples.hpp"
#include "test_support.hpp"

using namespace scalesplit;
using namespace testing_support;

TEST(SparseSymMatrix, SumsDuplicateTriplets) {
  const auto a = SparseSymMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 0, 2.0}, {0, 1, 0.5}, {1, 0, 0.5}, {1, 1, 4.0}});
  EXPECT_EQ(a.nnz(), 4u);
  EXPECT_DOUBLE_EQ(a(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(a(1, 0), 0.5);
}

TEST(SparseSymMatrix, RejectsAsymmetricValues) {
  EXPECT_THROW(SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.5}}), SymmetryViolation);
  EXPECT_THROW(SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}}), SymmetryViolation);
}

TEST(SparseSymMatrix, AcceptsRoundoffLevelAsymmetry) {
  EXPECT_NO_THROW(SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0 + 1e-14}}));
}

TEST(SparseSymMatrix, RejectsOutOfRangeIndex) {
  EXPECT_ANY_THROW(SparseSymMatrix::from_triplets(2, {{0, 2, 1.0}, {2, 0, 1.0}}));
}

TEST(SparseSymMatrix, ColumnsSortedWithinRows) {
  const auto a = kron_sum(tridiag(4, -1, 2, -1));
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_LE(rp[i], rp[i + 1]);
    for (std::size_t k = rp[i] + 1; k < rp[i + 1]; ++k) EXPECT_LT(ci[k - 1], ci[k]);
  }
}

TEST(Spmv, TridiagRowSums) {
  const auto a = tridiag(3, -1, 2, -1);
  const RealVector y = spmv(a, RealVector{1, 1, 1});
  EXPECT_EQ(y, (RealVector{1, 0, 1}));
}

TEST(Spmv, ZeroVectorGivesZero) {
  std::mt19937_64 rng(3);
  const auto a = from_dense(random_sym_dense(7, rng));
  const RealVector y = spmv(a, RealVector(7, 0.0));
  for (double v : y) EXPECT_EQ(v, 0.0);
}

TEST(Spmv, DimensionMismatch) {
  EXPECT_THROW(spmv(tridiag(3, -1, 2, -1), RealVector(4, 1.0)), DimensionMismatch);
}

TEST(Spmv, MatchesDenseProductUpToOrder50) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 5u, 17u, 50u}) {
    const Eigen::MatrixXd d = random_sym_dense(n, rng);
    const auto a = from_dense(d);
    const RealVector v = random_vector(n, rng);
    const Eigen::VectorXd ref = d * to_eigen(v);
    const Eigen::VectorXd got = to_eigen(spmv(a, v));
    EXPECT_LE((got - ref).norm(), 1e-13 * std::max(1.0, ref.norm())) << "n=" << n;
  }
}

TEST(ApplySystem, IdentityW) {
  std::mt19937_64 rng(1);
  const ComplexVector z = random_complex(6, rng);
  const auto w = SparseSymMatrix::identity(6);
  const auto t = SparseSymMatrix::from_triplets(6, {});
  EXPECT_EQ(apply_system(w, t, z), z);
}

TEST(ApplySystem, MultiplicationByI) {
  std::mt19937_64 rng(2);
  const ComplexVector z = random_complex(5, rng);
  const auto w = SparseSymMatrix::from_triplets(5, {});
  const auto t = SparseSymMatrix::identity(5);
  const ComplexVector r = apply_system(w, t, z);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(r.re[i], -z.im[i]);
    EXPECT_EQ(r.im[i], z.re[i]);
  }
}

TEST(ApplySystem, SpmvExpansionIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto w = from_dense(random_sym_dense(n, rng));
    const auto t = from_dense(random_sym_dense(n, rng));
    const ComplexVector z = random_complex(n, rng);
    const ComplexVector r = apply_system(w, t, z);
    const RealVector wx = spmv(w, z.re), ty = spmv(t, z.im), wy = spmv(w, z.im), tx = spmv(t, z.re);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_NEAR(r.re[i], wx[i] - ty[i], 1e-14);
      ASSERT_NEAR(r.im[i], wy[i] + tx[i], 1e-14);
    }
  }
}

TEST(ApplySystem, Example4TimesOnesIsRhs) {
  // Example 4 uses b = A 1, so A applied to the all-ones vector returns b.
  const Problem p = build_example4(8);
  const ComplexVector one(ones(8), RealVector(8, 0.0));
  const ComplexVector r = apply_system(p.w, p.t, one);
  // Interior rows: W and T row sums are 3 and 0.4; boundary rows lose one off-diagonal.
  EXPECT_NEAR(r.re[3], 2.0 + 2 * 0.5, 1e-15);
  EXPECT_NEAR(r.im[3], 2.0 - 2 * 0.8, 1e-15);
  EXPECT_NEAR(r.re[0], 2.5, 1e-15);
  EXPECT_NEAR(r.im[0], 1.2, 1e-15);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(r.re[i], p.b.re[i], 1e-15);
    EXPECT_NEAR(r.im[i], p.b.im[i], 1e-15);
  }
}

TEST(ResidualRelnorm, NullGuessIsOne) {
  const Problem p = build_example4(16);
  EXPECT_DOUBLE_EQ(residual_relnorm(p.w, p.t, p.b, ComplexVector(16)), 1.0);
}

TEST(ResidualRelnorm, ExactSolutionIsTiny) {
  std::mt19937_64 rng(8);
  const Eigen::MatrixXd w = random_spd_dense(9, rng), t = random_spd_dense(9, rng);
  const ComplexVector b = random_complex(9, rng);
  const Eigen::MatrixXcd a = w.cast<std::complex<double>>() + std::complex<double>(0, 1) * t;
  const Eigen::VectorXcd z = a.fullPivLu().solve(scalesplit::to_eigen(b));
  EXPECT_LE(residual_relnorm(from_dense(w), from_dense(t), b, from_eigen(z)), 1e-12);
}

TEST(ResidualRelnorm, MatchesDenseComputation) {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd w = random_sym_dense(10, rng), t = random_sym_dense(10, rng);
  const ComplexVector b = random_complex(10, rng), z = random_complex(10, rng);
  const Eigen::MatrixXcd a = w.cast<std::complex<double>>() + std::complex<double>(0, 1) * t;
  const Eigen::VectorXcd bz = scalesplit::to_eigen(b);
  const double ref = (bz - a * scalesplit::to_eigen(z)).norm() / bz.norm();
  EXPECT_NEAR(residual_relnorm(from_dense(w), from_dense(t), b, z), ref, 1e-14);
}

TEST(ResidualRelnorm, ZeroRhsThrows) {
  const auto w = SparseSymMatrix::identity(3);
  EXPECT_THROW(residual_relnorm(w, w, ComplexVector(3), ComplexVector(3)), ZeroRightHandSide);
}

TEST(KronSum, SmallestMesh) {
  const Eigen::MatrixXd k = to_dense(kron_sum(tridiag(2, -1, 2, -1)));
  Eigen::MatrixXd ref(4, 4);
  ref << 4, -1, -1, 0,  //
      -1, 4, 0, -1,     //
      -1, 0, 4, -1,     //
      0, -1, -1, 4;
  EXPECT_EQ(k, ref);
}

TEST(KronSum, InteriorRowSumsVanish) {
  const auto k = kron_sum(tridiag(3, -1, 2, -1));
  const RealVector s = spmv(k, ones(9));
  EXPECT_EQ(s[4], 0.0);  // the single interior node
  EXPECT_EQ(s[0], 2.0);  // corner: two missing neighbours
  EXPECT_EQ(s[1], 1.0);  // edge: one missing neighbour
}

TEST(KronSum, SymmetricPositiveSemidefinite) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const Eigen::MatrixXd k = to_dense(kron_sum(tridiag(m, -1, 2, -1)));
    EXPECT_EQ(k, k.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(KronSum, MatchesKronFormula) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd v = random_sym_dense(3, rng);
  const Eigen::MatrixXd k = to_dense(kron_sum(from_dense(v)));
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ref.block(3 * i, 3 * j, 3, 3) += v(i, j) * Eigen::MatrixXd::Identity(3, 3);
      if (i == j) ref.block(3 * i, 3 * j, 3, 3) += v;
    }
  EXPECT_LE((k - ref).norm(), 1e-15);
}

TEST(Tridiag, KnownToeplitzSpectrum) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(tridiag(3, -1, 2, -1)));
  const auto ev = es.eigenvalues();
  EXPECT_NEAR(ev(0), 2 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(ev(1), 2.0, 1e-14);
  EXPECT_NEAR(ev(2), 2 + std::sqrt(2.0), 1e-14);
}

TEST(Tridiag, RejectsAsymmetricBands) { EXPECT_THROW(tridiag(4, -1, 2, -0.5), SymmetryViolation); }

TEST(Tridiag, Example4Matrices) {
  const Problem p = build_example4(6);
  EXPECT_EQ(p.w, tridiag(6, 0.5, 2, 0.5));
  EXPECT_EQ(p.t, tridiag(6, -0.8, 2, -0.8));
}

TEST(LinearCombination, UnionPattern) {
  const auto a = tridiag(4, -1, 2, -1);
  const auto d = SparseSymMatrix::diagonal(RealVector{1, 2, 3, 4});
  const Eigen::MatrixXd ref = 2.0 * to_dense(a) - 3.0 * to_dense(d);
  EXPECT_LE((to_dense(linear_combination(2.0, a, -3.0, d)) - ref).norm(), 1e-15);
  EXPECT_LE((to_dense(shifted(2.0, a, 0.5)) - (2.0 * to_dense(a) + 0.5 * Eigen::MatrixXd::Identity(4, 4))).norm(),
            1e-15);
}

TEST(LinearCombination, DimensionMismatch) {
  EXPECT_THROW(linear_combination(1.0, tridiag(3, -1, 2, -1), 1.0, tridiag(4, -1, 2, -1)), DimensionMismatch);
}

TEST(ComplexVector, UnequalPartsRejected) { EXPECT_THROW(ComplexVector(RealVector(3), RealVector(2)), DimensionMismatch); }

TEST(DenseComplexMatrix, CapEnforced) {
  EXPECT_THROW(DenseComplexMatrix(Eigen::MatrixXcd::Zero(5, 5), 4), OracleCapExceeded);
  EXPECT_THROW(to_dense(tridiag(5, -1, 2, -1), 4), OracleCapExceeded);
}

TEST(DenseComplexMatrix, SpectralRadius) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = -4.0;  // eigenvalues +-2i
  EXPECT_NEAR(DenseComplexMatrix(m).spectral_radius(), 2.0, 1e-12);
}

TEST(SparseSymMatrix, ChecksumDistinguishesValues) {
  EXPECT_EQ(tridiag(5, -1, 2, -1).checksum(), tridiag(5, -1, 2, -1).checksum());
  EXPECT_NE(tridiag(5, -1, 2, -1).checksum(), tridiag(5, -1, 2.5, -1).checksum());
}
