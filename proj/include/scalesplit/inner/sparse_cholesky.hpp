#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"
#include "scalesplit/core/vector.hpp"
#include "scalesplit/inner/ordering.hpp"

namespace scalesplit::inner {

/// Up-looking sparse Cholesky factorization P A P^T = L L^T.
///
/// The symbolic phase builds the elimination tree and the row patterns of L
/// (via elimination-tree reaches) to size every column exactly; the numeric
/// phase computes one row of L at a time by a sparse triangular solve against
/// the rows already finished. L is stored by columns with the diagonal first.
class SparseCholesky {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  /// perm[new] = old. An empty permutation means natural ordering.
  static SparseCholesky factorize(const SparseSymMatrix& a, std::vector<std::size_t> perm = {}) {
    const std::size_t n = a.size();
    if (perm.empty()) perm = make_ordering(a, Ordering::natural);
    if (!is_permutation_of_iota(perm, n)) throw InvalidArgument("invalid permutation for Cholesky");

    SparseCholesky f;
    f.n_ = n;
    f.perm_ = std::move(perm);
    std::vector<std::size_t> pinv(n);
    for (std::size_t k = 0; k < n; ++k) pinv[f.perm_[k]] = k;

    // Upper triangle of C = P A P^T, by columns: entries (i, k) with i <= k.
    std::vector<std::size_t> cp(n + 1, 0), ci;
    std::vector<double> cx;
    {
      const auto rp = a.row_ptr();
      const auto ac = a.col_idx();
      const auto av = a.values();
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t old = f.perm_[k];
        for (std::size_t p = rp[old]; p < rp[old + 1]; ++p) {
          const std::size_t i = pinv[ac[p]];
          if (i <= k) {
            ci.push_back(i);
            cx.push_back(av[p]);
          }
        }
        cp[k + 1] = ci.size();
      }
    }

    f.parent_ = etree(n, cp, ci);

    // Column counts from the row patterns.
    std::vector<std::size_t> count(n, 1), stack(n), mark(n, kNone);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t top = ereach(k, cp, ci, f.parent_, stack, mark);
      for (std::size_t t = top; t < n; ++t) ++count[stack[t]];
    }
    f.lp_.assign(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) f.lp_[k + 1] = f.lp_[k] + count[k];
    f.li_.assign(f.lp_[n], 0);
    f.lx_.assign(f.lp_[n], 0.0);

    std::vector<std::size_t> next(f.lp_.begin(), f.lp_.end() - 1);
    std::vector<double> x(n, 0.0);
    std::fill(mark.begin(), mark.end(), kNone);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t top = ereach(k, cp, ci, f.parent_, stack, mark);
      x[k] = 0.0;
      for (std::size_t p = cp[k]; p < cp[k + 1]; ++p) x[ci[p]] = cx[p];
      double d = x[k];
      x[k] = 0.0;
      for (std::size_t t = top; t < n; ++t) {
        const std::size_t j = stack[t];
        const double lkj = x[j] / f.lx_[f.lp_[j]];
        x[j] = 0.0;
        for (std::size_t p = f.lp_[j] + 1; p < next[j]; ++p) x[f.li_[p]] -= f.lx_[p] * lkj;
        d -= lkj * lkj;
        const std::size_t p = next[j]++;
        f.li_[p] = k;
        f.lx_[p] = lkj;
      }
      if (!(d > 0.0) || !std::isfinite(d))
        throw NotPositiveDefinite("nonpositive pivot " + std::to_string(d) + " at step " + std::to_string(k) +
                                  " of Cholesky factorization");
      const std::size_t p = next[k]++;
      f.li_[p] = k;
      f.lx_[p] = std::sqrt(d);
    }
    return f;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t factor_nnz() const noexcept { return lx_.size(); }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  const std::vector<std::size_t>& elimination_tree() const noexcept { return parent_; }

  /// Entries of L (permuted ordering), row >= col.
  std::vector<Triplet> factor_entries() const {
    std::vector<Triplet> out;
    out.reserve(lx_.size());
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t p = lp_[j]; p < lp_[j + 1]; ++p) out.push_back({li_[p], j, lx_[p]});
    return out;
  }

  /// x = A^{-1} b. x and b may not alias.
  void solve(std::span<const double> b, std::span<double> x) const {
    check_size(n_, b.size(), "SparseCholesky::solve");
    check_size(n_, x.size(), "SparseCholesky::solve");
    std::vector<double> y(n_);
    for (std::size_t k = 0; k < n_; ++k) y[k] = b[perm_[k]];
    for (std::size_t j = 0; j < n_; ++j) {
      y[j] /= lx_[lp_[j]];
      const double yj = y[j];
      for (std::size_t p = lp_[j] + 1; p < lp_[j + 1]; ++p) y[li_[p]] -= lx_[p] * yj;
    }
    for (std::size_t j = n_; j-- > 0;) {
      double s = y[j];
      for (std::size_t p = lp_[j] + 1; p < lp_[j + 1]; ++p) s -= lx_[p] * y[li_[p]];
      y[j] = s / lx_[lp_[j]];
    }
    for (std::size_t k = 0; k < n_; ++k) x[perm_[k]] = y[k];
  }

  RealVector solve(std::span<const double> b) const {
    RealVector x(n_);
    solve(b, x);
    return x;
  }

 private:
  static std::vector<std::size_t> etree(std::size_t n, const std::vector<std::size_t>& cp,
                                        const std::vector<std::size_t>& ci) {
    std::vector<std::size_t> parent(n, kNone), ancestor(n, kNone);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t p = cp[k]; p < cp[k + 1]; ++p) {
        std::size_t i = ci[p];
        while (i != kNone && i < k) {
          const std::size_t inext = ancestor[i];
          ancestor[i] = k;
          if (inext == kNone) parent[i] = k;
          i = inext;
        }
      }
    }
    return parent;
  }

  // Pattern of row k of L, written to stack[top..n) in topological order.
  // mark[j] == k flags nodes already visited for this row.
  static std::size_t ereach(std::size_t k, const std::vector<std::size_t>& cp, const std::vector<std::size_t>& ci,
                            const std::vector<std::size_t>& parent, std::vector<std::size_t>& stack,
                            std::vector<std::size_t>& mark) {
    const std::size_t n = parent.size();
    std::size_t top = n;
    mark[k] = k;
    for (std::size_t p = cp[k]; p < cp[k + 1]; ++p) {
      std::size_t i = ci[p];
      if (i > k) continue;
      std::size_t len = 0;
      for (; mark[i] != k; i = parent[i]) {
        stack[len++] = i;
        mark[i] = k;
      }
      while (len > 0) stack[--top] = stack[--len];
    }
    return top;
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> lp_{0};
  std::vector<std::size_t> li_;
  std::vector<double> lx_;
};

}  // namespace scalesplit::inner
