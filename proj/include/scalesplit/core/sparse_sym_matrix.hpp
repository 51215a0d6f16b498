#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/vector.hpp"

namespace scalesplit {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Real symmetric matrix in compressed-row form.
///
/// Both triangles are stored. Construction validates that the pattern and the
/// values are symmetric (|a_ij - a_ji| <= 1e-12 * max(1, |a_ij|)) and that
/// column indices are sorted and in range. Instances are immutable; every
/// operation below returns a new matrix.
class SparseSymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SparseSymMatrix() = default;

  /// Assembles from coordinate entries covering the full pattern. Duplicate
  /// positions are summed.
  static SparseSymMatrix from_triplets(std::size_t n, std::vector<Triplet> entries) {
    for (const auto& t : entries) {
      if (t.row >= n || t.col >= n)
        throw InvalidArgument("triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                              ") out of range for order " + std::to_string(n));
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::size_t> col_idx;
    std::vector<double> values;
    col_idx.reserve(entries.size());
    values.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size();) {
      const std::size_t r = entries[k].row;
      const std::size_t c = entries[k].col;
      double v = 0.0;
      while (k < entries.size() && entries[k].row == r && entries[k].col == c) v += entries[k++].value;
      col_idx.push_back(c);
      values.push_back(v);
      ++row_ptr[r + 1];
    }
    for (std::size_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
    return from_csr(n, std::move(row_ptr), std::move(col_idx), std::move(values));
  }

  static SparseSymMatrix from_csr(std::size_t n, std::vector<std::size_t> row_ptr,
                                  std::vector<std::size_t> col_idx, std::vector<double> values) {
    SparseSymMatrix m;
    m.n_ = n;
    m.row_ptr_ = std::move(row_ptr);
    m.col_idx_ = std::move(col_idx);
    m.values_ = std::move(values);
    m.validate();
    return m;
  }

  static SparseSymMatrix identity(std::size_t n) { return diagonal(RealVector(n, 1.0)); }

  static SparseSymMatrix diagonal(std::span<const double> d) {
    const std::size_t n = d.size();
    std::vector<std::size_t> row_ptr(n + 1), col_idx(n);
    for (std::size_t i = 0; i < n; ++i) {
      row_ptr[i + 1] = i + 1;
      col_idx[i] = i;
    }
    return from_csr(n, std::move(row_ptr), std::move(col_idx), RealVector(d.begin(), d.end()));
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry (i, j); zero when outside the stored pattern.
  double operator()(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw InvalidArgument("entry index out of range");
    const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
  }

  /// 64-bit FNV-1a over the dimension, the pattern and the value bits.
  std::uint64_t checksum() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t word) {
      for (int b = 0; b < 8; ++b) {
        h ^= (word >> (8 * b)) & 0xffU;
        h *= 1099511628211ULL;
      }
    };
    mix(n_);
    for (auto p : row_ptr_) mix(p);
    for (auto c : col_idx_) mix(c);
    for (double v : values_) mix(std::bit_cast<std::uint64_t>(v));
    return h;
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) out.push_back({i, col_idx_[p], values_[p]});
    return out;
  }

  friend bool operator==(const SparseSymMatrix&, const SparseSymMatrix&) = default;

 private:
  void validate() const {
    if (row_ptr_.size() != n_ + 1) throw InvalidArgument("row_ptr must have n+1 entries");
    if (row_ptr_.front() != 0 || row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size())
      throw InvalidArgument("inconsistent compressed-row arrays");
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_ptr_[i + 1] < row_ptr_[i]) throw InvalidArgument("row_ptr not monotone");
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
        if (col_idx_[p] >= n_) throw InvalidArgument("column index out of range");
        if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1])
          throw InvalidArgument("column indices not strictly increasing in row " + std::to_string(i));
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
        const std::size_t j = col_idx_[p];
        if (j == i) continue;
        const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[j]);
        const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[j + 1]);
        const auto it = std::lower_bound(first, last, i);
        if (it == last || *it != i)
          throw SymmetryViolation("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") has no transpose partner");
        const double a = values_[p];
        const double b = values_[static_cast<std::size_t>(it - col_idx_.begin())];
        if (std::abs(a - b) > kSymmetryTolerance * std::max(1.0, std::abs(a)))
          throw SymmetryViolation("entries (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") and its transpose differ");
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// y = A v
inline void spmv(const SparseSymMatrix& a, std::span<const double> v, std::span<double> y) {
  check_size(a.size(), v.size(), "spmv");
  check_size(a.size(), y.size(), "spmv");
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto va = a.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) s += va[p] * v[ci[p]];
    y[i] = s;
  }
}

inline RealVector spmv(const SparseSymMatrix& a, std::span<const double> v) {
  RealVector y(a.size());
  spmv(a, v, y);
  return y;
}

/// alpha*A + beta*B over the union pattern.
inline SparseSymMatrix linear_combination(double alpha, const SparseSymMatrix& a, double beta,
                                          const SparseSymMatrix& b) {
  check_size(a.size(), b.size(), "linear_combination");
  const std::size_t n = a.size();
  std::vector<std::size_t> row_ptr(n + 1, 0), col_idx;
  std::vector<double> values;
  col_idx.reserve(a.nnz() + b.nnz());
  values.reserve(a.nnz() + b.nnz());
  const auto arp = a.row_ptr(), aci = a.col_idx(), brp = b.row_ptr(), bci = b.col_idx();
  const auto ava = a.values(), bva = b.values();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = arp[i], q = brp[i];
    while (p < arp[i + 1] || q < brp[i + 1]) {
      if (q == brp[i + 1] || (p < arp[i + 1] && aci[p] < bci[q])) {
        col_idx.push_back(aci[p]);
        values.push_back(alpha * ava[p++]);
      } else if (p == arp[i + 1] || bci[q] < aci[p]) {
        col_idx.push_back(bci[q]);
        values.push_back(beta * bva[q++]);
      } else {
        col_idx.push_back(aci[p]);
        values.push_back(alpha * ava[p++] + beta * bva[q++]);
      }
    }
    row_ptr[i + 1] = col_idx.size();
  }
  return SparseSymMatrix::from_csr(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

inline SparseSymMatrix scaled(double alpha, const SparseSymMatrix& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= alpha;
  return SparseSymMatrix::from_csr(a.size(), {a.row_ptr().begin(), a.row_ptr().end()},
                                   {a.col_idx().begin(), a.col_idx().end()}, std::move(v));
}

/// alpha*A + sigma*I
inline SparseSymMatrix shifted(double alpha, const SparseSymMatrix& a, double sigma) {
  return linear_combination(alpha, a, sigma, SparseSymMatrix::identity(a.size()));
}

/// Symmetric tridiagonal Toeplitz matrix; lower and upper bands must agree.
inline SparseSymMatrix tridiag(std::size_t n, double lower, double diag, double upper) {
  if (lower != upper) throw SymmetryViolation("tridiag: lower and upper bands differ");
  std::vector<Triplet> t;
  t.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) t.push_back({i, i - 1, lower});
    t.push_back({i, i, diag});
    if (i + 1 < n) t.push_back({i, i + 1, upper});
  }
  return SparseSymMatrix::from_triplets(n, std::move(t));
}

/// Kronecker product A (x) B; symmetric when both factors are.
inline SparseSymMatrix kron(const SparseSymMatrix& a, const SparseSymMatrix& b) {
  const std::size_t nb = b.size();
  std::vector<Triplet> t;
  t.reserve(a.nnz() * b.nnz());
  for (const auto& ea : a.triplets())
    for (const auto& eb : b.triplets())
      t.push_back({ea.row * nb + eb.row, ea.col * nb + eb.col, ea.value * eb.value});
  return SparseSymMatrix::from_triplets(a.size() * nb, std::move(t));
}

/// I (x) V + V (x) I
inline SparseSymMatrix kron_sum(const SparseSymMatrix& v) {
  const auto eye = SparseSymMatrix::identity(v.size());
  return linear_combination(1.0, kron(eye, v), 1.0, kron(v, eye));
}

}  // namespace scalesplit
