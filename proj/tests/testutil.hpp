// Copyright 2026 The qcval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent oracles used to derive expected values. These deliberately
// avoid the library's computation paths: dense direction sampling instead
// of extremal-direction enumeration, grids instead of level-set algebra,
// plain quadrature instead of telescoping sums.

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qcval/qcval.hpp"

namespace qcval::testing {

/// Brute-force h_K over explicit box corners.
inline double corner_support(const Box& b, const Vec& u) {
  const int n = b.dim();
  double best = -1e300;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec corner(n);
    for (int i = 0; i < n; ++i) corner[i] = (mask >> i & 1) ? b.hi[i] : b.lo[i];
    best = std::max(best, corner.dot(u));
  }
  return best;
}

/// Dense-sampling Hausdorff oracle: sup |h_A - h_B| over many directions.
inline double dense_hausdorff(const ConvexBody& a, const ConvexBody& b,
                              int dirs = 200000) {
  double best = 0.0;
  for (const Vec& u : sphere_directions(ambient_dim(a), dirs))
    best = std::max(best, std::abs(support_value(a, u) - support_value(b, u)));
  return best;
}

/// Pointwise lattice oracle on a regular grid over a window box.
inline double grid_mismatch(const SimpleQCF& combined, const SimpleQCF& f,
                            const SimpleQCF& g, bool is_max, const Box& window,
                            int cells = 50) {
  double worst = 0.0;
  const int n = window.dim();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec x(n);
    for (int i = 0; i < n; ++i)
      x[i] = window.lo[i] +
             (window.hi[i] - window.lo[i]) * (idx[static_cast<std::size_t>(i)] + 0.5) / cells;
    const double want = is_max ? std::max(evaluate(f, x), evaluate(g, x))
                               : std::min(evaluate(f, x), evaluate(g, x));
    worst = std::max(worst, std::abs(evaluate(combined, x) - want));
    int i = 0;
    while (i < n && ++idx[static_cast<std::size_t>(i)] == cells) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return worst;
}

/// Midpoint-convexity probe of a union of two boxes on a grid: returns true
/// if every midpoint of grid points of the union lies in the union.
inline bool union_convex_on_grid(const Box& a, const Box& b, int cells = 21) {
  const int n = a.dim();
  Box window{a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi)};
  std::vector<Vec> members;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec x(n);
    for (int i = 0; i < n; ++i)
      x[i] = window.lo[i] +
             (window.hi[i] - window.lo[i]) * idx[static_cast<std::size_t>(i)] / (cells - 1.0);
    if (a.contains_point(x) || b.contains_point(x)) members.push_back(x);
    int i = 0;
    while (i < n && ++idx[static_cast<std::size_t>(i)] == cells) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  // epsilon-expanded membership absorbs midpoint rounding at boundaries
  const double eps = 1e-9;
  const Box ae{Vec(a.lo.array() - eps), Vec(a.hi.array() + eps)};
  const Box be{Vec(b.lo.array() - eps), Vec(b.hi.array() + eps)};
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Vec mid = 0.5 * (members[i] + members[j]);
      if (!ae.contains_point(mid) && !be.contains_point(mid)) return false;
    }
  return true;
}

/// Composite Simpson quadrature (independent of the adaptive routine).
inline double simpson(const std::function<double(double)>& g, double a, double b,
                      int intervals) {
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / intervals;
  double s = g(a) + g(b);
  for (int i = 1; i < intervals; ++i)
    s += g(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Numeric derivative for quadrature cross-checks.
inline double central_diff(const std::function<double(double)>& g, double t,
                           double h = 1e-6) {
  return (g(t + h) - g(t - h)) / (2.0 * h);
}

}  // namespace qcval::testing
