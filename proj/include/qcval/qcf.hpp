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

// Simple quasi-concave step functions f = t_1 I_{K_1} v ... v t_m I_{K_m}
// with 0 < t_1 < ... < t_m and nested bodies K_1 ⊇ ... ⊇ K_m, stored in
// canonical form (consecutive equal bodies merged). The zero function is
// the empty stack. Super-level sets follow the right-closed convention:
// L_t(f) = K_i for t in (t_{i-1}, t_i], empty past t_m.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcval/distance.hpp"
#include "qcval/geometry.hpp"

namespace qcval {

struct Level {
  double t;
  ConvexBody body;
};

/// Raised by lattice_max when the pointwise maximum leaves the
/// quasi-concave class; carries the first threshold whose level-set union
/// fails to be convex.
struct NotQuasiConcave : std::runtime_error {
  explicit NotQuasiConcave(double t)
      : std::runtime_error("not quasi-concave: level-set union not convex at t=" +
                           std::to_string(t)),
        threshold(t) {}
  double threshold;
};

namespace detail {
// Thresholds that agree to 1e-12 (relative) index the same measure atom.
inline bool same_threshold(double a, double b) {
  return std::abs(a - b) <= kTightTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
}  // namespace detail

class SimpleQCF {
 public:
  SimpleQCF() = default;  // the zero function

  const std::vector<Level>& levels() const { return levels_; }
  bool is_zero() const { return levels_.empty(); }
  std::size_t size() const { return levels_.size(); }

  /// Ambient dimension; -1 for the zero function (which lives in any R^N).
  int dim() const { return levels_.empty() ? -1 : ambient_dim(levels_.front().body); }

  /// M(f) = max over R^N; 0 for the zero function.
  double max_value() const { return levels_.empty() ? 0.0 : levels_.back().t; }

 private:
  explicit SimpleQCF(std::vector<Level> lv) : levels_(std::move(lv)) {}
  std::vector<Level> levels_;
  friend SimpleQCF make_simple(std::vector<Level> levels);
};

/// Validates and canonicalizes a level stack: sorts by threshold, rejects
/// non-positive or duplicated thresholds with distinct bodies, verifies
/// nestedness, and drops level i whenever K_i equals K_{i+1}.
inline SimpleQCF make_simple(std::vector<Level> levels) {
  if (levels.empty()) return SimpleQCF{};
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.t < b.t; });
  const int n = ambient_dim(levels.front().body);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i].t > 0.0))
      throw std::invalid_argument("make_simple: non-positive threshold at level " +
                                  std::to_string(i));
    if (ambient_dim(levels[i].body) != n)
      throw std::invalid_argument("make_simple: mixed ambient dimensions at level " +
                                  std::to_string(i));
  }
  std::vector<Level> merged;
  for (auto& lv : levels) {
    if (!merged.empty() && detail::same_threshold(merged.back().t, lv.t)) {
      if (!body_equal(merged.back().body, lv.body))
        throw std::invalid_argument(
            "make_simple: duplicate threshold t=" + std::to_string(lv.t) +
            " at levels " + std::to_string(merged.size() - 1) + " and " +
            std::to_string(merged.size()) + " with distinct bodies");
      continue;
    }
    merged.push_back(std::move(lv));
  }
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (!body_contains(merged[i].body, merged[i + 1].body))
      throw std::invalid_argument("make_simple: level " + std::to_string(i + 1) +
                                  " not contained in level " + std::to_string(i));
  }
  std::vector<Level> canonical;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (i + 1 < merged.size() && body_equal(merged[i].body, merged[i + 1].body))
      continue;  // the higher threshold on the same body dominates
    canonical.push_back(std::move(merged[i]));
  }
  return SimpleQCF{std::move(canonical)};
}

inline SimpleQCF single_level(double t, ConvexBody body) {
  return make_simple({Level{t, std::move(body)}});
}

/// L_t(f): K_i for t in (t_{i-1}, t_i], nullopt past t_m.
inline std::optional<ConvexBody> level_set(const SimpleQCF& f, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("level_set: t must be positive");
  for (const Level& lv : f.levels())
    if (t <= lv.t) return lv.body;
  return std::nullopt;
}

/// Pointwise value max{t_i : x in K_i} (0 outside the support).
inline double evaluate(const SimpleQCF& f, const Vec& x) {
  if (f.is_zero()) return 0.0;
  if (x.size() != f.dim())
    throw std::invalid_argument("evaluate: point dimension mismatch");
  for (auto it = f.levels().rbegin(); it != f.levels().rend(); ++it)
    if (body_contains_point(it->body, x)) return it->t;
  return 0.0;
}

/// f ∧ g for box stacks: intersects level sets on the merged threshold
/// grid; empty intersections truncate the stack.
inline SimpleQCF lattice_min(const SimpleQCF& f, const SimpleQCF& g) {
  if (f.is_zero() || g.is_zero()) return SimpleQCF{};
  if (f.dim() != g.dim())
    throw std::invalid_argument("lattice_min: dimension mismatch");
  std::vector<double> grid;
  for (const Level& lv : f.levels()) grid.push_back(lv.t);
  for (const Level& lv : g.levels()) grid.push_back(lv.t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return detail::same_threshold(a, b); }),
             grid.end());
  std::vector<Level> out;
  for (double t : grid) {
    auto a = level_set(f, t);
    auto b = level_set(g, t);
    if (!a || !b) break;
    const Box* ba = std::get_if<Box>(&*a);
    const Box* bb = std::get_if<Box>(&*b);
    if (!ba || !bb)
      throw std::invalid_argument("lattice_min: only box stacks are supported");
    auto inter = box_intersect(*ba, *bb);
    if (!inter) break;
    out.push_back(Level{t, std::move(*inter)});
  }
  return make_simple(std::move(out));
}

/// f ∨ g for box stacks; throws NotQuasiConcave naming the first merged
/// threshold whose level-set union is not convex.
inline SimpleQCF lattice_max(const SimpleQCF& f, const SimpleQCF& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.dim() != g.dim())
    throw std::invalid_argument("lattice_max: dimension mismatch");
  std::vector<double> grid;
  for (const Level& lv : f.levels()) grid.push_back(lv.t);
  for (const Level& lv : g.levels()) grid.push_back(lv.t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return detail::same_threshold(a, b); }),
             grid.end());
  std::vector<Level> out;
  for (double t : grid) {
    auto a = level_set(f, t);
    auto b = level_set(g, t);
    if (!a && !b) break;
    if (!a || !b) {
      out.push_back(Level{t, std::move(a ? *a : *b)});
      continue;
    }
    const Box* ba = std::get_if<Box>(&*a);
    const Box* bb = std::get_if<Box>(&*b);
    if (!ba || !bb)
      throw std::invalid_argument("lattice_max: only box stacks are supported");
    auto uni = box_union_if_convex(*ba, *bb);
    if (!uni) throw NotQuasiConcave(t);
    out.push_back(Level{t, std::move(*uni)});
  }
  return make_simple(std::move(out));
}

/// Level sets map K_i -> lambda * (±K_i) + v; thresholds are untouched, so
/// M(f) is invariant. This is f ∘ g_lambda composed with the optional
/// reflection and translation.
inline SimpleQCF transform_qcf(const SimpleQCF& f, double lambda, const Vec& v,
                               bool reflect) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("transform_qcf: lambda must be positive");
  std::vector<Level> out;
  out.reserve(f.size());
  for (const Level& lv : f.levels())
    out.push_back(Level{lv.t, transform_body(lv.body, lambda, v, reflect)});
  return make_simple(std::move(out));
}

inline SimpleQCF transform_qcf(const SimpleQCF& f, double lambda) {
  return transform_qcf(f, lambda, Vec(), false);
}

inline SimpleQCF rotate_qcf(const SimpleQCF& f, const Eigen::MatrixXd& r) {
  std::vector<Level> out;
  out.reserve(f.size());
  for (const Level& lv : f.levels())
    out.push_back(Level{lv.t, rotate_body(lv.body, r)});
  return make_simple(std::move(out));
}

/// Black-box quasi-concave function: a maximum value and a level-set map,
/// antitone on (0, max_value].
struct QCFOracle {
  double max_value;
  std::function<std::optional<ConvexBody>(double)> level_set_fn;
};

/// The cone over `body`: L_t = (1-t) * body for t in (0,1].
inline QCFOracle cone_oracle(const ConvexBody& body) {
  return QCFOracle{1.0, [body](double t) -> std::optional<ConvexBody> {
                     if (t > 1.0) return std::nullopt;
                     return detail::scale_about_origin(body, 1.0 - t);
                   }};
}

/// Inner dyadic approximant at depth i: the simple function
/// ∨_{j=1..2^i} t_j I_{L_{t_j}(f)} with t_j = j M(f) / 2^i. Pointwise below
/// the oracle and nondecreasing in i on nested grids.
inline SimpleQCF dyadic_approx(const QCFOracle& f, int depth) {
  if (depth < 1) throw std::invalid_argument("dyadic_approx: depth must be >= 1");
  if (!(f.max_value > 0.0))
    throw std::invalid_argument("dyadic_approx: oracle max must be positive");
  const std::int64_t steps = std::int64_t{1} << depth;
  const double dt = f.max_value / static_cast<double>(steps);
  std::vector<Level> out;
  for (std::int64_t j = 1; j <= steps; ++j) {
    const double t = (j == steps) ? f.max_value : static_cast<double>(j) * dt;
    auto body = f.level_set_fn(t);
    if (!body)
      throw std::invalid_argument(
          "dyadic_approx: oracle level set empty at t=" + std::to_string(t) +
          " <= M(f)");
    out.push_back(Level{t, std::move(*body)});
  }
  try {
    return make_simple(std::move(out));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(
        std::string("dyadic_approx: oracle violates antitonicity on the grid (") +
        e.what() + ")");
  }
}

}  // namespace qcval
