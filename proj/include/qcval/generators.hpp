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

// Seeded generators for bodies, stacks and lattice-compatible pairs.
// Compatible max-pairs are convex by construction: per-level containment
// (shrink toward a shared anchor) or aligned-box overlap along one axis.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qcval/geometry.hpp"
#include "qcval/qcf.hpp"
#include "qcval/rng.hpp"

namespace qcval {

inline Box random_box(Rng& rng, int n, double center_range = 2.0,
                      double side_min = 0.3, double side_max = 2.0) {
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const double c = rng.uniform(-center_range, center_range);
    const double s = rng.uniform(side_min, side_max);
    lo[i] = c - 0.5 * s;
    hi[i] = c + 0.5 * s;
  }
  return Box::make(std::move(lo), std::move(hi));
}

inline Zonotope random_zonotope(Rng& rng, int n, int gens) {
  Vec base(n);
  for (int i = 0; i < n; ++i) base[i] = rng.uniform(-1.0, 1.0);
  std::vector<Vec> gs;
  while (static_cast<int>(gs.size()) < gens) {
    Vec g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.uniform(-1.0, 1.0);
    if (g.norm() >= 0.25) gs.push_back(std::move(g));
  }
  return Zonotope::make(std::move(base), std::move(gs));
}

/// Strictly nested sub-box with at least 20% of each side retained.
inline Box shrink_box(Rng& rng, const Box& b) {
  Vec lo = b.lo, hi = b.hi;
  for (int i = 0; i < b.dim(); ++i) {
    const double s = b.side(i);
    const double cut_lo = rng.uniform(0.0, 0.3) * s;
    const double cut_hi = rng.uniform(0.0, 0.3) * s;
    lo[i] += cut_lo;
    hi[i] -= cut_hi;
  }
  return Box::make(std::move(lo), std::move(hi));
}

inline std::vector<double> random_thresholds(Rng& rng, int m, double lo = 0.3,
                                             double hi = 3.0) {
  std::vector<double> ts;
  while (static_cast<int>(ts.size()) < m) {
    const double t = rng.uniform(lo, hi);
    bool ok = true;
    for (double s : ts)
      if (std::abs(s - t) < 0.05) ok = false;
    if (ok) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

inline SimpleQCF random_box_stack(Rng& rng, int n, int max_levels = 3) {
  const int m = rng.uniform_int(1, max_levels);
  const std::vector<double> ts = random_thresholds(rng, m);
  std::vector<Level> levels;
  Box cur = random_box(rng, n);
  for (int i = 0; i < m; ++i) {
    levels.push_back(Level{ts[static_cast<std::size_t>(i)], ConvexBody(cur)});
    cur = shrink_box(rng, cur);
  }
  return make_simple(std::move(levels));
}

inline SimpleQCF random_zonotope_stack(Rng& rng, int n, int max_levels = 3) {
  const int m = rng.uniform_int(1, max_levels);
  const std::vector<double> ts = random_thresholds(rng, m);
  Zonotope outer = random_zonotope(rng, n, n + 1);
  std::vector<Level> levels;
  const Vec center = outer.center();
  for (int i = 0; i < m; ++i) {
    // scale toward the center keeps the family nested
    const double s = 1.0 - 0.25 * i;
    std::vector<Vec> gens;
    for (const Vec& g : outer.generators) gens.push_back(s * g);
    Vec base = center + s * (outer.base - center);
    levels.push_back(Level{ts[static_cast<std::size_t>(i)],
                           ConvexBody(Zonotope{std::move(base), std::move(gens)})});
  }
  return make_simple(std::move(levels));
}

/// A pair (f, g) of box stacks whose pointwise maximum stays quasi-concave.
/// Variants: identical pair; g shrunk toward an anchor inside every level
/// of f (with random levels dropped); g translated along one axis by less
/// than the smallest overlap, all on a shared threshold grid.
inline std::pair<SimpleQCF, SimpleQCF> random_compatible_pair(Rng& rng, int n,
                                                              int max_levels = 3) {
  const SimpleQCF f = random_box_stack(rng, n, max_levels);
  const int variant = rng.uniform_int(0, 3);
  if (variant == 0) return {f, f};

  const auto& lv = f.levels();
  if (variant == 1) {
    // containment: anchor in the innermost body, per-level shrink factors
    // decreasing with the level index
    const Box& innermost = std::get<Box>(lv.back().body);
    Vec anchor(n);
    for (int i = 0; i < n; ++i)
      anchor[i] = 0.5 * (innermost.lo[i] + innermost.hi[i]);
    std::vector<double> gammas;
    for (std::size_t i = 0; i < lv.size(); ++i) gammas.push_back(rng.uniform(0.3, 1.0));
    std::sort(gammas.rbegin(), gammas.rend());
    std::vector<Level> out;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (lv.size() > 1 && rng.uniform() < 0.25) continue;  // drop some levels
      const Box& a = std::get<Box>(lv[i].body);
      const double gamma = gammas[i];
      Vec lo = anchor + gamma * (a.lo - anchor);
      Vec hi = anchor + gamma * (a.hi - anchor);
      out.push_back(Level{lv[i].t, ConvexBody(Box{std::move(lo), std::move(hi)})});
    }
    return {f, make_simple(std::move(out))};
  }
  if (variant == 2) {
    // aligned shift along one axis, bounded by the smallest side there
    const int axis = rng.uniform_int(0, n - 1);
    double min_side = std::numeric_limits<double>::infinity();
    for (const Level& l : lv)
      min_side = std::min(min_side, std::get<Box>(l.body).side(axis));
    const double shift = rng.uniform(-0.9, 0.9) * min_side;
    Vec v = Vec::Zero(n);
    v[axis] = shift;
    return {f, transform_qcf(f, 1.0, v, false)};
  }
  // aligned symmetric extension along one axis (f contained in g)
  const int axis = rng.uniform_int(0, n - 1);
  const double grow = rng.uniform(0.05, 0.6);
  std::vector<Level> out;
  for (const Level& l : lv) {
    const Box& a = std::get<Box>(l.body);
    Vec lo = a.lo, hi = a.hi;
    lo[axis] -= grow;
    hi[axis] += grow;
    out.push_back(Level{l.t, ConvexBody(Box{std::move(lo), std::move(hi)})});
  }
  return {f, make_simple(std::move(out))};
}

}  // namespace qcval
