#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/core/vector.hpp"
#include "scalesplit/inner/conjugate_gradient.hpp"
#include "scalesplit/inner/ordering.hpp"
#include "scalesplit/inner/sparse_cholesky.hpp"

namespace scalesplit::inner {

enum class InnerKind { direct_cholesky, conjugate_gradient };

inline const char* to_string(InnerKind k) {
  return k == InnerKind::direct_cholesky ? "cholesky" : "cg";
}

/// How the SPD subsystems inside each outer step are solved.
struct InnerSolveChoice {
  InnerKind kind = InnerKind::direct_cholesky;
  double cg_tolerance = 1e-12;
  /// 0 selects 10 * n.
  std::size_t cg_max_iterations = 0;
  Ordering ordering = Ordering::natural;

  void validate() const {
    if (!(cg_tolerance > 0.0 && cg_tolerance < 1.0)) throw InvalidArgument("cg tolerance must lie in (0, 1)");
  }

  std::size_t effective_cg_max_iterations(std::size_t n) const {
    return cg_max_iterations == 0 ? std::max<std::size_t>(1, 10 * n) : cg_max_iterations;
  }
};

struct MatrixFingerprint {
  std::size_t dimension = 0;
  std::uint64_t checksum = 0;
  friend bool operator==(const MatrixFingerprint&, const MatrixFingerprint&) = default;
};

/// Reusable solver handle for one SPD matrix.
///
/// Direct mode factorizes eagerly; iterative mode only keeps the matrix.
/// The handle is immutable apart from an atomic count of real solves, so
/// concurrent solves against one factorization are safe.
class SpdFactorization {
 public:
  static SpdFactorization factorize(const SparseSymMatrix& a, const InnerSolveChoice& choice = {},
                                    std::vector<std::size_t> permutation = {}) {
    choice.validate();
    SpdFactorization f;
    f.choice_ = choice;
    f.fingerprint_ = {a.size(), a.checksum()};
    f.matrix_ = std::make_shared<const SparseSymMatrix>(a);
    if (choice.kind == InnerKind::direct_cholesky) {
      if (permutation.empty()) permutation = make_ordering(a, choice.ordering);
      f.cholesky_ = std::make_shared<const SparseCholesky>(SparseCholesky::factorize(a, std::move(permutation)));
    }
    return f;
  }

  std::size_t size() const noexcept { return fingerprint_.dimension; }
  const MatrixFingerprint& fingerprint() const noexcept { return fingerprint_; }
  InnerKind kind() const noexcept { return choice_.kind; }
  const SparseSymMatrix& matrix() const noexcept { return *matrix_; }
  /// Null in iterative mode.
  const SparseCholesky* cholesky() const noexcept { return cholesky_.get(); }

  /// Number of real solves (one forward/backward triangular pair each in
  /// direct mode) performed through this handle and its copies.
  std::size_t real_solve_count() const noexcept { return counter_->load(std::memory_order_relaxed); }

  void solve_real(std::span<const double> rhs, std::span<double> x) const {
    check_size(size(), rhs.size(), "solve_real");
    check_size(size(), x.size(), "solve_real");
    counter_->fetch_add(1, std::memory_order_relaxed);
    if (cholesky_) {
      cholesky_->solve(rhs, x);
    } else {
      conjugate_gradient(*matrix_, rhs, x, choice_.cg_tolerance, choice_.effective_cg_max_iterations(size()));
    }
  }

  RealVector solve_real(std::span<const double> rhs) const {
    RealVector x(size());
    solve_real(rhs, x);
    return x;
  }

  /// A is real, so A z = r splits into two real solves sharing the handle.
  ComplexVector solve_complex(const ComplexVector& rhs) const {
    ComplexVector z(size());
    solve_real(rhs.re, z.re);
    solve_real(rhs.im, z.im);
    return z;
  }

 private:
  SpdFactorization() = default;

  InnerSolveChoice choice_;
  MatrixFingerprint fingerprint_;
  std::shared_ptr<const SparseSymMatrix> matrix_;
  std::shared_ptr<const SparseCholesky> cholesky_;
  std::shared_ptr<std::atomic<std::size_t>> counter_ = std::make_shared<std::atomic<std::size_t>>(0);
};

inline SpdFactorization factorize(const SparseSymMatrix& a, const InnerSolveChoice& choice = {}) {
  return SpdFactorization::factorize(a, choice);
}

inline RealVector solve_real(const SpdFactorization& f, std::span<const double> rhs) { return f.solve_real(rhs); }

inline ComplexVector solve_complex(const SpdFactorization& f, const ComplexVector& rhs) {
  return f.solve_complex(rhs);
}

}  // namespace scalesplit::inner
