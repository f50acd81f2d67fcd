// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Second-order left-trivialized derivatives of sampled curves in SU(2).
//
// With L[k] = log(g_k^-1 g_{k+1}) the Magnus expansion gives
// L[k] = h X_k + h^2/2 X'_k + O(h^3) and log(g_k^-1 g_{k-1}) = -L[k-1], so
// (L[k] + L[k-1]) / 2h = X_k + O(h^2). The ends use the one-sided
// three-point formula.

#pragma once

#include <vector>

#include "loopext/lie.hpp"

namespace loopext::detail {

/// Forward transition logs of a curve given by get(k), k = 0..n-1. For a
/// periodic curve there are n of them (the last wraps around), else n-1.
template <class Get>
void forward_logs(const Get& get, int n, bool periodic, std::vector<AlgElement>& out) {
  const int m = periodic ? n : n - 1;
  out.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const int next = (k + 1 == n) ? 0 : k + 1;
    out[static_cast<std::size_t>(k)] = log_map(group_mul(get(k).inverse(), get(next)));
  }
}

/// Derivative at sample k from precomputed forward logs. Needs n >= 3 for
/// open curves.
template <class Get>
AlgElement derivative_at(const Get& get, const std::vector<AlgElement>& logs, int k, int n, double h,
                         bool periodic) {
  const double inv = 0.5 / h;
  if (periodic) {
    const int prev = (k == 0) ? n - 1 : k - 1;
    return (logs[static_cast<std::size_t>(k)] + logs[static_cast<std::size_t>(prev)]) * inv;
  }
  if (k == 0) {
    const AlgElement two = log_map(group_mul(get(0).inverse(), get(2)));
    return (logs[0] * 4.0 - two) * inv;
  }
  if (k == n - 1) {
    const AlgElement two = log_map(group_mul(get(n - 1).inverse(), get(n - 3)));
    return (logs[static_cast<std::size_t>(n - 2)] * 4.0 + two) * inv;
  }
  return (logs[static_cast<std::size_t>(k)] + logs[static_cast<std::size_t>(k - 1)]) * inv;
}

}  // namespace loopext::detail

namespace loopext::detail {

/// Derivative at sample k of an open curve with n >= 3 samples, computing
/// the two logs it needs directly.
template <class Get>
AlgElement derivative_direct(const Get& get, int k, int n, double h) {
  const double inv = 0.5 / h;
  const auto lg = [&](int from, int to) { return log_map(group_mul(get(from).inverse(), get(to))); };
  if (k == 0) return (lg(0, 1) * 4.0 - lg(0, 2)) * inv;
  if (k == n - 1) return (lg(n - 2, n - 1) * 4.0 + lg(n - 1, n - 3)) * inv;
  return (lg(k, k + 1) + lg(k - 1, k)) * inv;
}

}  // namespace loopext::detail
