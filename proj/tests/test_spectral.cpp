#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "scalesplit/problems/examples.hpp"
#include "scalesplit/spectral/dense_oracles.hpp"
#include "scalesplit/spectral/grid_search.hpp"
#include "scalesplit/spectral/optimal_alpha.hpp"
#include "test_support.hpp"

using namespace scalesplit;
using namespace scalesplit::spectral;
using namespace testing_support;

namespace {

// Brute-force argmin of the scalar spectral radius on a uniform grid.
std::pair<double, double> grid_min(const std::vector<double>& mus, double lo, double hi, double step) {
  double best_a = lo, best = tscsp_spectral_radius(mus, lo);
  for (double a = lo; a <= hi; a += step) {
    const double r = tscsp_spectral_radius(mus, a);
    if (r < best) best = r, best_a = a;
  }
  return {best_a, best};
}

// Eigenvalues of W^{-1} T through a general (nonsymmetric) eigensolve.
std::vector<double> pencil_by_nonsymmetric_route(const Eigen::MatrixXd& w, const Eigen::MatrixXd& t) {
  const Eigen::MatrixXd s = w.partialPivLu().solve(t);
  Eigen::EigenSolver<Eigen::MatrixXd> es(s, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.rows(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(GeneralizedEigs, StandardProblem) {
  const auto mus = generalized_eigs(SparseSymMatrix::identity(3), SparseSymMatrix::diagonal(RealVector{3, 1, 2}));
  ASSERT_EQ(mus.size(), 3u);
  EXPECT_NEAR(mus[0], 1, 1e-14);
  EXPECT_NEAR(mus[1], 2, 1e-14);
  EXPECT_NEAR(mus[2], 3, 1e-14);
}

TEST(GeneralizedEigs, EqualPairGivesOnes) {
  const Problem p = build_synthetic(10, 2, SyntheticKind::equal_pair);
  for (double mu : generalized_eigs(p.w, p.t)) EXPECT_NEAR(mu, 1.0, 1e-12);
}

TEST(GeneralizedEigs, Example4MatchesNonsymmetricRoute) {
  const Problem p = build_example4(8);
  const auto mus = generalized_eigs(p.w, p.t);
  const auto ref = pencil_by_nonsymmetric_route(to_dense(p.w), to_dense(p.t));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(mus[i], ref[i], 1e-12);
  // det(T - mu W) vanishes at every eigenvalue.
  for (double mu : mus) {
    const Eigen::MatrixXd pencil = to_dense(p.t) - mu * to_dense(p.w);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pencil);
    EXPECT_LT(svd.singularValues().minCoeff(), 1e-12);
  }
}

TEST(GeneralizedEigs, Errors) {
  EXPECT_THROW(generalized_eigs(tridiag(4, -2, 1, -2), SparseSymMatrix::identity(4)), NotPositiveDefinite);
  EXPECT_THROW(generalized_eigs(SparseSymMatrix::identity(5), SparseSymMatrix::identity(5), 4), OracleCapExceeded);
}

TEST(ScalarAmplification, Zeros) {
  EXPECT_EQ(scalar_amplification(0.7, 0.7), 0.0);
  EXPECT_NEAR(scalar_amplification(4.0, 0.25), 0.0, 1e-16);
  EXPECT_NEAR(scalar_amplification(2.0, 0.5), 0.0, 1e-16);
}

TEST(ScalarAmplification, DirectArithmetic) {
  EXPECT_NEAR(scalar_amplification(2.0, 0.25), 1.75 * 0.5 / (2.25 * 1.5), 1e-15);
  EXPECT_NEAR(scalar_amplification(2.0, 0.25), 0.259259259259259, 1e-14);
}

TEST(TscspSpectralRadius, SinglePointSpectrum) {
  for (double a : {0.1, 0.5, 1.0, 3.0}) {
    const double ref = std::pow((1 - a) / (1 + a), 2);
    EXPECT_NEAR(tscsp_spectral_radius(std::vector<double>{1.0, 1.0}, a), ref, 1e-15);
  }
}

TEST(TscspSpectralRadius, ZeroEigenvalueGivesOne) {
  for (double a : {0.01, 0.5, 2.0, 9.0}) EXPECT_DOUBLE_EQ(tscsp_spectral_radius(std::vector<double>{0.0, 0.4, 2.0}, a), 1.0);
}

TEST(TscspSpectralRadius, Errors) {
  EXPECT_THROW(tscsp_spectral_radius(std::vector<double>{}, 1.0), InvalidArgument);
  EXPECT_THROW(tscsp_spectral_radius(std::vector<double>{1.0}, 0.0), InvalidArgument);
}

TEST(OptimalAlpha, SingleEigenvalue) {
  const SpectralInfo info = optimal_alpha({0.5});
  EXPECT_NEAR(info.eta, 2.5, 1e-15);
  EXPECT_NEAR(info.alpha_opt_minus, 0.5, 1e-15);
  EXPECT_NEAR(info.alpha_opt_plus, 2.0, 1e-15);
  EXPECT_NEAR(info.rho_opt, 0.0, 1e-15);
}

TEST(OptimalAlpha, UnitEigenvalue) {
  const SpectralInfo info = optimal_alpha({1.0});
  EXPECT_DOUBLE_EQ(info.eta, 2.0);
  EXPECT_DOUBLE_EQ(info.alpha_opt_minus, 1.0);
  EXPECT_DOUBLE_EQ(info.alpha_opt_plus, 1.0);
  EXPECT_DOUBLE_EQ(info.rho_opt, 0.0);
}

TEST(OptimalAlpha, CaseTags) {
  EXPECT_EQ(optimal_alpha({0.1, 0.5}).spectrum_case, SpectrumCase::all_below_one);
  EXPECT_EQ(optimal_alpha({2.0, 5.0}).spectrum_case, SpectrumCase::all_above_one);
  const auto s = optimal_alpha({0.2, 0.9, 1.5, 6.0});
  EXPECT_EQ(s.spectrum_case, SpectrumCase::straddling);
  EXPECT_EQ(s.k, 2u);
  EXPECT_STREQ(to_string(SpectrumCase::all_above_one), "all-above-one");
}

TEST(OptimalAlpha, EndpointCasesUseSpectrumBounds) {
  const auto info = optimal_alpha({0.1, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(info.gamma, 0.1);
  EXPECT_DOUBLE_EQ(info.delta, 0.5);
  EXPECT_NEAR(info.eta, std::sqrt((1 + 0.01) * (1 + 0.25) / 0.05), 1e-14);
}

TEST(OptimalAlpha, StraddlingCaseIsGridOptimal) {
  // The far endpoint and the eigenvalue nearest one in mu + 1/mu decide rho.
  const std::vector<double> mus{0.2, 0.9, 1.5, 6.0};
  const auto info = optimal_alpha(mus);
  const auto [a, r] = grid_min(mus, 1e-4, 1.0, 1e-5);
  EXPECT_NEAR(a, info.alpha_opt_minus, 2e-5);
  // No grid point beats the closed form; the kink at the optimum bounds the gap by slope * step.
  EXPECT_GE(r, info.rho_opt - 1e-12);
  EXPECT_NEAR(r, info.rho_opt, 1e-4);
  EXPECT_NEAR(tscsp_spectral_radius(mus, info.alpha_opt_minus), info.rho_opt, 1e-12);
}

TEST(OptimalAlpha, RejectsNonpositiveEigenvalues) {
  EXPECT_THROW(optimal_alpha({0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(optimal_alpha({-0.1}), InvalidArgument);
  EXPECT_THROW(optimal_alpha({}), InvalidArgument);
}

TEST(OptimalAlpha, WorkBetaAtLeastTwo) {
  const std::vector<double> mus{0.05, 0.7, 1.0, 1.3, 40.0};
  const auto work = optimal_alpha_work(mus);
  for (double b : work.beta) EXPECT_GE(b, 2.0);
  EXPECT_EQ(work.k, 3u);  // mu = 1 joins the lower block
}

TEST(OptimalAlpha, Example1NearTunedValue) {
  const Problem p = build_example1(16);
  const auto info = spectral_info(p.w, p.t);
  EXPECT_LT(info.rho_opt, 1.0);
  EXPECT_NEAR(info.alpha_opt_minus * info.alpha_opt_plus, 1.0, 1e-12);
  const auto [a, r] = grid_min(info.mus, 0.005, 1.0, 0.005);
  EXPECT_NEAR(a, info.alpha_opt_minus, 0.005);
}

TEST(DenseIterationMatrix, EqualPairUnitAlphaVanishes) {
  const Problem p = build_synthetic(8, 5, SyntheticKind::equal_pair);
  EXPECT_LE(dense_iteration_matrix(p.w, p.t, 1.0, MethodKind::tscsp).matrix().norm(), 1e-12);
}

TEST(DenseIterationMatrix, TscspEigenvaluesAreScalarAmplifications) {
  std::mt19937_64 rng(12);
  const Eigen::MatrixXd w = random_spd_dense(8, rng), t = random_spd_dense(8, rng);
  const auto W = from_dense(w), T = from_dense(t);
  const double alpha = 0.37;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense_iteration_matrix(W, T, alpha, MethodKind::tscsp).matrix(), false);
  std::vector<double> got, ref;
  for (Eigen::Index i = 0; i < 8; ++i) got.push_back(std::abs(es.eigenvalues()(i)));
  for (double mu : pencil_by_nonsymmetric_route(w, t)) ref.push_back(std::abs(scalar_amplification(mu, alpha)));
  std::sort(got.begin(), got.end());
  std::sort(ref.begin(), ref.end());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(got[i], ref[i], 1e-9);
}

TEST(DenseIterationMatrix, ScspRadiusMatchesPowerIteration) {
  std::mt19937_64 rng(13);
  const Eigen::MatrixXd w = random_spd_dense(8, rng), t = random_spd_dense(8, rng);
  const Eigen::MatrixXcd g = dense_iteration_matrix(from_dense(w), from_dense(t), 0.8, MethodKind::scsp).matrix();
  // Contraction factor of ||G^k v||^(1/k) for a generic start vector.
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(8);
  double log_growth = 0.0;
  const int steps = 4000;
  for (int k = 0; k < steps; ++k) {
    v = g * v;
    const double nv = v.norm();
    log_growth += std::log(nv);
    v /= nv;
  }
  const double observed = std::exp(log_growth / steps);
  EXPECT_NEAR(observed, DenseComplexMatrix(g).spectral_radius(), 5e-3);
  // G = i (alpha W + T)^{-1} (W - alpha T) has eigenvalues i (1 - alpha mu) / (alpha + mu).
  double ref = 0.0;
  for (double mu : pencil_by_nonsymmetric_route(w, t)) ref = std::max(ref, std::abs(1.0 - 0.8 * mu) / (0.8 + mu));
  EXPECT_NEAR(DenseComplexMatrix(g).spectral_radius(), ref, 1e-9);
}

TEST(SplittingMatrices, IdentityAndIterationMatrix) {
  std::mt19937_64 rng(14);
  const auto W = from_dense(random_spd_dense(8, rng)), T = from_dense(random_spd_dense(8, rng));
  const auto [m, nmat] = splitting_matrices(W, T, 0.6);
  EXPECT_LE((m.matrix() - nmat.matrix() - dense_system(W, T).matrix()).norm(), 1e-10);
  const Eigen::MatrixXcd g = m.matrix().fullPivLu().solve(nmat.matrix());
  EXPECT_LE((g - dense_iteration_matrix(W, T, 0.6, MethodKind::tscsp).matrix()).norm(), 1e-9);
}

TEST(SplittingMatrices, EqualPairUnitAlphaHasZeroN) {
  const Problem p = build_synthetic(8, 6, SyntheticKind::equal_pair);
  EXPECT_LE(splitting_matrices(p.w, p.t, 1.0).second.matrix().norm(), 1e-12);
}

TEST(GsorConvergenceInterval, Trivial) {
  const auto w = tridiag(6, -1, 3, -1);
  EXPECT_DOUBLE_EQ(gsor_convergence_interval(w, SparseSymMatrix::from_triplets(6, {})), 2.0);
  EXPECT_NEAR(gsor_convergence_interval(w, w), 1.0, 1e-12);
}

TEST(GsorConvergenceInterval, Example4MatchesDense) {
  const Problem p = build_example4(64);
  const auto ref = pencil_by_nonsymmetric_route(to_dense(p.w), to_dense(p.t));
  double rho = 0.0;
  for (double mu : ref) rho = std::max(rho, std::abs(mu));
  EXPECT_NEAR(gsor_convergence_interval(p.w, p.t), 2.0 / (1.0 + rho), 1e-10);
}

TEST(GridSearch, Example1Tscsp) {
  const auto r = grid_search_alpha(build_example1(32), MethodKind::tscsp, {0.01, 2.0, 0.01});
  EXPECT_NEAR(r.best_alpha, 0.46, 0.02);
  EXPECT_LE(r.best_iterations, 8u);
  EXPECT_EQ(r.grid.size(), 200u);
}

TEST(GridSearch, Example3Scsp) {
  const auto r = grid_search_alpha(build_example3(32), MethodKind::scsp, {0.01, 3.0, 0.01});
  EXPECT_NEAR(r.best_alpha, 1.92, 0.05);
}

TEST(GridSearch, EqualPairPicksUnitAlpha) {
  const auto r = grid_search_alpha(build_synthetic(10, 1, SyntheticKind::equal_pair), MethodKind::tscsp,
                                   {0.01, 2.0, 0.01});
  EXPECT_DOUBLE_EQ(r.best_alpha, 1.0);
  EXPECT_EQ(r.best_iterations, 1u);
}

TEST(GridSearch, ThreadCountDoesNotChangeResult) {
  const Problem p = build_example4(256);
  const AlphaGrid g{0.05, 2.0, 0.05};
  const auto one = grid_search_alpha(p, MethodKind::scsp, g, {}, 1);
  const auto three = grid_search_alpha(p, MethodKind::scsp, g, {}, 3);
  EXPECT_EQ(one.best_alpha, three.best_alpha);
  ASSERT_EQ(one.grid.size(), three.grid.size());
  for (std::size_t i = 0; i < one.grid.size(); ++i) EXPECT_EQ(one.grid[i].iterations, three.grid[i].iterations);
}

TEST(GridSearch, TiesGoToSmallerAlpha) {
  const auto r = grid_search_alpha(build_synthetic(6, 2, SyntheticKind::equal_pair), MethodKind::tscsp,
                                   {0.5, 1.5, 0.5});
  // alpha = 1 wins outright; the bracket points tie among themselves and are ordered by alpha.
  EXPECT_DOUBLE_EQ(r.best_alpha, 1.0);
  EXPECT_DOUBLE_EQ(r.grid.front().alpha, 0.5);
}

TEST(GridSearch, AllFailuresReported) {
  SolverConfig base;
  base.max_iterations = 1;
  EXPECT_THROW(grid_search_alpha(build_example1(8), MethodKind::mhss, {0.5, 1.0, 0.25}, base), AllGridPointsFailed);
}

TEST(GridSearch, InvalidGrid) {
  EXPECT_THROW(grid_search_alpha(build_example4(8), MethodKind::tscsp, {0.0, 1.0, 0.1}), InvalidArgument);
  EXPECT_THROW(grid_search_alpha(build_example4(8), MethodKind::tscsp, {0.5, 0.4, 0.1}), InvalidArgument);
  EXPECT_THROW(grid_search_alpha(build_example4(8), MethodKind::tscsp, {0.1, 1.0, 0.0}), InvalidArgument);
}

TEST(AlphaGrid, PointsAreRounded) {
  const auto pts = AlphaGrid{0.01, 2.0, 0.01}.points();
  EXPECT_EQ(pts[45], 0.46);
  EXPECT_EQ(pts.back(), 2.0);
}
