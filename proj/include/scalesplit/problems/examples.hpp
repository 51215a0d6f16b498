#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <variant>

#include "scalesplit/core/complex_system.hpp"
#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/problems/problem.hpp"

namespace scalesplit {

inline double mesh_size(std::size_t m) { return 1.0 / static_cast<double>(m + 1); }

/// Five-point negative Laplacian on an m x m interior grid of the unit
/// square: I (x) V + V (x) I with V = h^-2 tridiag(-1, 2, -1).
inline SparseSymMatrix laplacian_2d(std::size_t m) {
  const double h = mesh_size(m);
  return kron_sum(scaled(1.0 / (h * h), tridiag(m, -1.0, 2.0, -1.0)));
}

namespace detail {

// (c.re + i c.im) * (W + iT) 1
inline ComplexVector scaled_row_sums(const SparseSymMatrix& w, const SparseSymMatrix& t, double c_re,
                                     double c_im) {
  const ComplexVector a1 = apply_system(w, t, ComplexVector(ones(w.size()), RealVector(w.size(), 0.0)));
  ComplexVector b(w.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    b.re[i] = c_re * a1.re[i] - c_im * a1.im[i];
    b.im[i] = c_re * a1.im[i] + c_im * a1.re[i];
  }
  return b;
}

}  // namespace detail

/// W = K + (3 - sqrt3)/tau I, T = K + (3 + sqrt3)/tau I,
/// b_j = (1 - i) j / (tau (j + 1)^2), j = 1..n; everything scaled by h^2.
inline Problem build_example1(std::size_t m, std::optional<double> tau_opt = std::nullopt) {
  if (m < 1) throw InvalidArgument("example 1 requires m >= 1");
  const double h = mesh_size(m);
  const double tau = tau_opt.value_or(h);
  if (!(tau > 0.0)) throw InvalidArgument("example 1 requires tau > 0");
  const double h2 = h * h;
  const SparseSymMatrix k = laplacian_2d(m);
  const double s3 = std::sqrt(3.0);
  Problem p;
  p.w = shifted(h2, k, h2 * (3.0 - s3) / tau);
  p.t = shifted(h2, k, h2 * (3.0 + s3) / tau);
  const std::size_t n = m * m;
  p.b = ComplexVector(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double j = static_cast<double>(idx + 1);
    const double v = h2 * j / (tau * (j + 1.0) * (j + 1.0));
    p.b.re[idx] = v;
    p.b.im[idx] = -v;
  }
  p.spec = Example1{m, tau_opt};
  p.normalized = true;
  return p;
}

/// W = K - omega^2 I, T = 10 omega I + mu K, scaled by h^2; b = (1 + i) A 1.
inline Problem build_example2(std::size_t m, double omega = 4.0, double mu_damp = 0.02) {
  if (m < 1) throw InvalidArgument("example 2 requires m >= 1");
  const double h = mesh_size(m);
  const double h2 = h * h;
  const SparseSymMatrix k = laplacian_2d(m);
  Problem p;
  p.w = shifted(h2, k, -h2 * omega * omega);
  p.t = shifted(h2 * mu_damp, k, h2 * 10.0 * omega);
  p.b = detail::scaled_row_sums(p.w, p.t, 1.0, 1.0);
  p.spec = Example2{m, omega, mu_damp};
  p.normalized = true;
  return p;
}

/// T = I (x) V + V (x) I, W = 10 (I (x) Vc + Vc (x) I) + 9 (e1 em^T + em e1^T) (x) I
/// with V = tridiag(-1, 2, -1), Vc = V - e1 em^T - em e1^T; b = (1 + i) A 1.
/// Not normalized.
inline Problem build_example3(std::size_t m) {
  if (m < 2) throw InvalidArgument("example 3 requires m >= 2");
  const SparseSymMatrix v = tridiag(m, -1.0, 2.0, -1.0);
  const SparseSymMatrix corners = SparseSymMatrix::from_triplets(m, {{0, m - 1, 1.0}, {m - 1, 0, 1.0}});
  const SparseSymMatrix vc = linear_combination(1.0, v, -1.0, corners);
  Problem p;
  p.t = kron_sum(v);
  p.w = linear_combination(10.0, kron_sum(vc), 9.0, kron(corners, SparseSymMatrix::identity(m)));
  p.b = detail::scaled_row_sums(p.w, p.t, 1.0, 1.0);
  p.spec = Example3{m};
  p.normalized = false;
  return p;
}

/// W = tridiag(-1 + theta1, 2, -1 + theta1), T = tridiag(-1 + theta2, 2, -1 + theta2),
/// b = A 1. Not normalized.
inline Problem build_example4(std::size_t n, double theta1 = 1.5, double theta2 = 0.2) {
  if (n < 1) throw InvalidArgument("example 4 requires n >= 1");
  Problem p;
  p.w = tridiag(n, -1.0 + theta1, 2.0, -1.0 + theta1);
  p.t = tridiag(n, -1.0 + theta2, 2.0, -1.0 + theta2);
  p.b = detail::scaled_row_sums(p.w, p.t, 1.0, 0.0);
  p.spec = Example4{n, theta1, theta2};
  p.normalized = false;
  return p;
}

namespace detail {

// B B^T + shift I with B an n x n standard normal matrix, stored densely.
inline SparseSymMatrix random_spd(std::size_t n, double shift, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> b(n * n);
  for (double& x : b) x = normal(rng);
  std::vector<Triplet> t;
  t.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b[i * n + k] * b[j * n + k];
      if (i == j) {
        t.push_back({i, i, s + shift});
      } else {
        t.push_back({i, j, s});
        t.push_back({j, i, s});
      }
    }
  }
  return SparseSymMatrix::from_triplets(n, std::move(t));
}

// Weighted path-plus-chords graph Laplacian: symmetric PSD with T 1 = 0.
inline SparseSymMatrix random_graph_laplacian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> diag(n, 0.0);
  std::vector<Triplet> t;
  auto add_edge = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    const double w = weight(rng);
    t.push_back({i, j, -w});
    t.push_back({j, i, -w});
    diag[i] += w;
    diag[j] += w;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) add_edge(i, i + 1);
  for (std::size_t c = 0; c < n; ++c) add_edge(pick(rng), pick(rng));
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, diag[i]});
  return SparseSymMatrix::from_triplets(n, std::move(t));
}

}  // namespace detail

/// Random instances: a random SPD pair, W = T, or SPD W with a singular
/// positive semidefinite T (graph Laplacian, exact zero eigenvalue for the
/// constant vector). b is a random complex vector.
inline Problem build_synthetic(std::size_t n, std::uint64_t seed, SyntheticKind kind = SyntheticKind::random_pair) {
  if (n < 1) throw InvalidArgument("synthetic problems require n >= 1");
  std::mt19937_64 rng(seed);
  const double shift = 0.1 * static_cast<double>(n);
  Problem p;
  p.w = detail::random_spd(n, shift, rng);
  switch (kind) {
    case SyntheticKind::random_pair: p.t = detail::random_spd(n, shift, rng); break;
    case SyntheticKind::equal_pair: p.t = p.w; break;
    case SyntheticKind::singular_t: p.t = detail::random_graph_laplacian(n, rng); break;
  }
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  p.b = ComplexVector(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.b.re[i] = uni(rng);
    p.b.im[i] = uni(rng);
  }
  p.spec = Synthetic{n, seed, kind};
  p.normalized = false;
  return p;
}

inline Problem build_problem(const ProblemSpec& spec) {
  return std::visit(
      [](const auto& s) -> Problem {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Example1>) return build_example1(s.m, s.tau);
        else if constexpr (std::is_same_v<S, Example2>) return build_example2(s.m, s.omega, s.mu_damp);
        else if constexpr (std::is_same_v<S, Example3>) return build_example3(s.m);
        else if constexpr (std::is_same_v<S, Example4>) return build_example4(s.n, s.theta1, s.theta2);
        else return build_synthetic(s.n, s.seed, s.kind);
      },
      spec);
}

}  // namespace scalesplit
