#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

#include "scalesplit/core/error.hpp"
#include "scalesplit/core/sparse_sym_matrix.hpp"

namespace scalesplit::inner {

/// Fill-reducing permutation applied before a direct factorization.
/// Iteration counts do not depend on the choice; only factor size does.
enum class Ordering { natural, reverse_cuthill_mckee };

/// Reverse Cuthill-McKee ordering. Returns perm with perm[new] = old.
/// Each connected component starts from a minimum-degree vertex.
inline std::vector<std::size_t> reverse_cuthill_mckee(const SparseSymMatrix& a) {
  const std::size_t n = a.size();
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = rp[i + 1] - rp[i];

  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> by_degree(n);
  for (std::size_t i = 0; i < n; ++i) by_degree[i] = i;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::size_t x, std::size_t y) { return degree[x] < degree[y]; });

  std::vector<std::size_t> nbrs;
  for (std::size_t seed : by_degree) {
    if (visited[seed]) continue;
    std::queue<std::size_t> q;
    q.push(seed);
    visited[seed] = 1;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      order.push_back(v);
      nbrs.clear();
      for (std::size_t p = rp[v]; p < rp[v + 1]; ++p)
        if (!visited[ci[p]]) {
          visited[ci[p]] = 1;
          nbrs.push_back(ci[p]);
        }
      std::stable_sort(nbrs.begin(), nbrs.end(), [&](std::size_t x, std::size_t y) { return degree[x] < degree[y]; });
      for (std::size_t u : nbrs) q.push(u);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

inline bool is_permutation_of_iota(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

inline std::vector<std::size_t> make_ordering(const SparseSymMatrix& a, Ordering ordering) {
  switch (ordering) {
    case Ordering::natural: {
      std::vector<std::size_t> perm(a.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      return perm;
    }
    case Ordering::reverse_cuthill_mckee:
      return reverse_cuthill_mckee(a);
  }
  throw InvalidArgument("unknown ordering");
}

}  // namespace scalesplit::inner
