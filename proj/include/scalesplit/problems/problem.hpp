#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "scalesplit/core/complex_system.hpp"
#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/core/vector.hpp"

namespace scalesplit {

/// Shifted 2D Laplacian pair: W = K + (3-sqrt3)/tau I, T = K + (3+sqrt3)/tau I.
struct Example1 {
  std::size_t m = 32;
  std::optional<double> tau;  // defaults to h = 1/(m+1)
};

/// Damped Helmholtz-type pair: W = K - omega^2 I, T = 10 omega I + mu K.
struct Example2 {
  std::size_t m = 32;
  double omega = 4.0;
  double mu_damp = 0.02;
};

/// Periodic/Dirichlet Laplacian pair on an m x m grid.
struct Example3 {
  std::size_t m = 32;
};

/// Tridiagonal Toeplitz pair of order n.
struct Example4 {
  std::size_t n = 1024;
  double theta1 = 1.5;
  double theta2 = 0.2;
};

enum class SyntheticKind { random_pair, equal_pair, singular_t };

/// Small dense-stored random SPD pairs for property checks and smoke runs.
struct Synthetic {
  std::size_t n = 8;
  std::uint64_t seed = 0;
  SyntheticKind kind = SyntheticKind::random_pair;
};

using ProblemSpec = std::variant<Example1, Example2, Example3, Example4, Synthetic>;

inline std::string example_id(const ProblemSpec& spec) {
  switch (spec.index()) {
    case 0: return "1";
    case 1: return "2";
    case 2: return "3";
    case 3: return "4";
    default: return "synthetic";
  }
}

/// One instance of (W + iT) z = b.
struct Problem {
  SparseSymMatrix w;
  SparseSymMatrix t;
  ComplexVector b;
  ProblemSpec spec;
  bool normalized = false;

  std::size_t size() const noexcept { return w.size(); }

  void validate() const {
    check_size(w.size(), t.size(), "Problem");
    check_size(w.size(), b.size(), "Problem");
    if (!(norm2(b) > 0.0)) throw ZeroRightHandSide();
  }
};

}  // namespace scalesplit
