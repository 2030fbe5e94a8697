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

// Convex bodies (axis-aligned boxes, zonotopes, embedded lower-dimensional
// bodies), their support functions, transforms, Hausdorff distance and exact
// intrinsic volumes. Everything here is an immutable value; all operations
// are pure.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qcval/rng.hpp"

namespace qcval {

using Vec = Eigen::VectorXd;

// Relative tolerance for exact-path comparisons (support dominance, union
// convexity volume test). Monte-Carlo paths use reported standard errors.
inline constexpr double kExactRelTol = 1e-9;
inline constexpr double kTightTol = 1e-12;
inline constexpr double kPi = 3.14159265358979323846;

/// Axis-aligned box given by opposite corners. Degenerate sides (lo==hi on
/// an axis) are allowed and represent lower-dimensional boxes.
struct Box {
  Vec lo;
  Vec hi;

  static Box make(Vec lo_, Vec hi_) {
    if (lo_.size() != hi_.size())
      throw std::invalid_argument("Box: lo/hi dimension mismatch");
    if (lo_.size() == 0) throw std::invalid_argument("Box: empty corners");
    for (Eigen::Index i = 0; i < lo_.size(); ++i) {
      if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i]))
        throw std::invalid_argument("Box: non-finite corner on axis " +
                                    std::to_string(i));
      if (lo_[i] > hi_[i])
        throw std::invalid_argument("Box: lo > hi on axis " +
                                    std::to_string(i));
    }
    return Box{std::move(lo_), std::move(hi_)};
  }

  int dim() const { return static_cast<int>(lo.size()); }
  double side(int i) const { return hi[i] - lo[i]; }

  double volume() const {
    double v = 1.0;
    for (Eigen::Index i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }

  bool contains_point(const Vec& x) const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
};

inline Box make_box(std::initializer_list<double> lo,
                    std::initializer_list<double> hi) {
  Vec l(static_cast<Eigen::Index>(lo.size())), h(static_cast<Eigen::Index>(hi.size()));
  Eigen::Index i = 0;
  for (double v : lo) l[i++] = v;
  i = 0;
  for (double v : hi) h[i++] = v;
  return Box::make(std::move(l), std::move(h));
}

inline Box unit_cube(int n) {
  return Box::make(Vec::Zero(n), Vec::Ones(n));
}

/// Minkowski sum of segments [0, g_i] translated by `base`. An empty
/// generator list is a point.
struct Zonotope {
  Vec base;
  std::vector<Vec> generators;

  static Zonotope make(Vec base_, std::vector<Vec> gens) {
    const Eigen::Index n = base_.size();
    if (n == 0) throw std::invalid_argument("Zonotope: empty base");
    for (const Vec& g : gens)
      if (g.size() != n)
        throw std::invalid_argument("Zonotope: generator dimension mismatch");
    return Zonotope{std::move(base_), std::move(gens)};
  }

  int dim() const { return static_cast<int>(base.size()); }

  Vec center() const {
    Vec c = base;
    for (const Vec& g : generators) c += 0.5 * g;
    return c;
  }
};

/// Orthonormal k-frame in R^N; spans a k-dimensional subspace (a point on
/// the Grassmannian Gr(N,k) together with a choice of coordinates).
struct Frame {
  std::vector<Vec> vectors;

  static Frame make(std::vector<Vec> vs) {
    if (vs.empty()) throw std::invalid_argument("Frame: no vectors");
    const Eigen::Index n = vs.front().size();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].size() != n)
        throw std::invalid_argument("Frame: mixed dimensions");
      for (std::size_t j = 0; j <= i; ++j) {
        const double d = vs[i].dot(vs[j]);
        const double want = (i == j) ? 1.0 : 0.0;
        if (std::abs(d - want) > kTightTol)
          throw std::invalid_argument("Frame: vectors not orthonormal");
      }
    }
    if (static_cast<Eigen::Index>(vs.size()) > n)
      throw std::invalid_argument("Frame: more vectors than ambient dimension");
    return Frame{std::move(vs)};
  }

  int ambient_dim() const { return static_cast<int>(vectors.front().size()); }
  int size() const { return static_cast<int>(vectors.size()); }

  Vec to_ambient(const Vec& coords) const {
    Vec x = Vec::Zero(ambient_dim());
    for (int j = 0; j < size(); ++j) x += coords[j] * vectors[j];
    return x;
  }

  Vec to_coords(const Vec& x) const {
    Vec c(size());
    for (int j = 0; j < size(); ++j) c[j] = vectors[j].dot(x);
    return c;
  }

  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd m(ambient_dim(), size());
    for (int j = 0; j < size(); ++j) m.col(j) = vectors[j];
    return m;
  }
};

/// A k-dimensional box or zonotope carried into R^N by an orthonormal frame
/// plus offset. Intrinsic volumes up to degree k are those of the inner
/// body; higher degrees vanish.
struct EmbeddedBody {
  Frame frame;
  Vec offset;
  std::variant<Box, Zonotope> body;

  int dim() const { return frame.ambient_dim(); }
  int inner_dim() const { return frame.size(); }
};

using ConvexBody = std::variant<Box, Zonotope, EmbeddedBody>;

inline int ambient_dim(const ConvexBody& b) {
  return std::visit([](const auto& v) { return v.dim(); }, b);
}

inline EmbeddedBody embed(std::variant<Box, Zonotope> body_k, Frame frame,
                          Vec offset) {
  const int k = std::visit([](const auto& v) { return v.dim(); }, body_k);
  if (k != frame.size())
    throw std::invalid_argument("embed: body dimension != frame size");
  if (offset.size() != frame.ambient_dim())
    throw std::invalid_argument("embed: offset dimension mismatch");
  return EmbeddedBody{std::move(frame), std::move(offset), std::move(body_k)};
}

// ---------------------------------------------------------------------------
// Intrinsic volumes
// ---------------------------------------------------------------------------

/// Elementary symmetric polynomials e_0..e_n of the side lengths; for an
/// axis-aligned box these are exactly its intrinsic volumes V_0..V_n.
inline std::vector<double> box_intrinsic_volumes(const Box& b) {
  const int n = b.dim();
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double a = b.side(i);
    for (int k = std::min(i + 1, n); k >= 1; --k) e[k] += a * e[k - 1];
  }
  return e;
}

/// V_k of a zonotope: sum over k-element generator subsets S of the
/// k-volume sqrt(det(A_S^T A_S)) of the parallelepiped they span.
inline double zonotope_intrinsic_volume(const Zonotope& z, int k) {
  const int n = z.dim();
  if (k < 0 || k > n)
    throw std::out_of_range("zonotope_intrinsic_volume: k out of range");
  if (k == 0) return 1.0;
  const int m = static_cast<int>(z.generators.size());
  if (k > m) return 0.0;

  double total = 0.0;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  Eigen::MatrixXd a(n, k);
  while (true) {
    for (int j = 0; j < k; ++j) a.col(j) = z.generators[idx[j]];
    const double det = (a.transpose() * a).determinant();
    if (det > 0.0) total += std::sqrt(det);
    // next k-combination of {0..m-1}
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

/// All intrinsic volumes V_0..V_N of a body in ambient dimension N.
inline std::vector<double> intrinsic_volumes(const ConvexBody& b) {
  const int n = ambient_dim(b);
  if (const auto* box = std::get_if<Box>(&b)) return box_intrinsic_volumes(*box);
  if (const auto* z = std::get_if<Zonotope>(&b)) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[k] = zonotope_intrinsic_volume(*z, k);
    return v;
  }
  const auto& e = std::get<EmbeddedBody>(b);
  std::vector<double> inner = std::visit(
      [](const auto& body) { return intrinsic_volumes(ConvexBody(body)); },
      e.body);
  inner.resize(static_cast<std::size_t>(n) + 1, 0.0);
  return inner;
}

inline double intrinsic_volume(const ConvexBody& b, int k) {
  const int n = ambient_dim(b);
  if (k < 0 || k > n) throw std::out_of_range("intrinsic_volume: k out of range");
  return intrinsic_volumes(b)[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------
// Support functions and Hausdorff distance
// ---------------------------------------------------------------------------

/// h_K(u) = max_{x in K} (u, x). Exact for every supported family;
/// positively 1-homogeneous in u.
inline double support_value(const ConvexBody& b, const Vec& u) {
  if (u.size() != ambient_dim(b))
    throw std::invalid_argument("support_value: direction dimension mismatch");
  if (u.norm() == 0.0)
    throw std::invalid_argument("support_value: zero direction");
  if (const auto* box = std::get_if<Box>(&b)) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
      h += std::max(u[i] * box->lo[i], u[i] * box->hi[i]);
    return h;
  }
  if (const auto* z = std::get_if<Zonotope>(&b)) {
    double h = z->base.dot(u);
    for (const Vec& g : z->generators) h += std::max(0.0, g.dot(u));
    return h;
  }
  const auto& e = std::get<EmbeddedBody>(b);
  const Vec uk = e.frame.to_coords(u);
  double h = e.offset.dot(u);
  if (uk.norm() == 0.0) {
    // direction orthogonal to the carrier flat; every point projects alike
    return h;
  }
  return h + std::visit(
                 [&](const auto& inner) {
                   return support_value(ConvexBody(inner), uk);
                 },
                 e.body);
}

/// Deterministic direction set on S^{N-1}; depends only on (n, count) so
/// that sampled Hausdorff distances form a pseudometric on a fixed set.
inline std::vector<Vec> sphere_directions(int n, int count) {
  std::vector<Vec> dirs;
  if (n == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
    return dirs;
  }
  if (n == 2) {
    dirs.reserve(count);
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * kPi * j / count;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      dirs.push_back(u);
    }
    return dirs;
  }
  if (n == 3) {
    // Fibonacci sphere
    dirs.reserve(count);
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = ga * j;
      Vec u(3);
      u << r * std::cos(a), r * std::sin(a), z;
      dirs.push_back(u);
    }
    return dirs;
  }
  Rng rng(mix_seed(0x51CEA11DULL, (static_cast<std::uint64_t>(n) << 32) ^
                                      static_cast<std::uint64_t>(count)));
  dirs.reserve(count);
  while (static_cast<int>(dirs.size()) < count) {
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = rng.normal();
    const double nrm = u.norm();
    if (nrm > 1e-8) dirs.push_back(u / nrm);
  }
  return dirs;
}

namespace detail {

// Exact extremal directions for a pair of boxes: on each sign-pattern cell
// of the sphere, h_A - h_B is linear with gradient w; the cell maximum sits
// at the clipped, normalized w. Enumerating all 3^N patterns (minus zero)
// makes the sampled sup exact for box pairs.
inline void box_pair_directions(const Box& a, const Box& b,
                                std::vector<Vec>& out) {
  const int n = a.dim();
  std::vector<int> sigma(static_cast<std::size_t>(n), -1);
  while (true) {
    Vec w(n);
    bool all_zero = true;
    for (int i = 0; i < n; ++i) {
      if (sigma[i] > 0)
        w[i] = a.hi[i] - b.hi[i];
      else if (sigma[i] < 0)
        w[i] = a.lo[i] - b.lo[i];
      else
        w[i] = 0.0;
      if (sigma[i] != 0) all_zero = false;
    }
    if (!all_zero) {
      for (int sign = 0; sign < 2; ++sign) {
        Vec c = Vec::Zero(n);
        for (int i = 0; i < n; ++i) {
          const double wi = sign ? -w[i] : w[i];
          if (sigma[i] > 0 && wi > 0.0) c[i] = wi;
          if (sigma[i] < 0 && wi < 0.0) c[i] = wi;
        }
        const double nrm = c.norm();
        if (nrm > 0.0) out.push_back(c / nrm);
      }
    }
    int i = 0;
    while (i < n && sigma[i] == 1) sigma[i++] = -1;
    if (i == n) break;
    ++sigma[i];
  }
}

}  // namespace detail

/// Sup of |h_A - h_B| over a deterministic direction set of size >= n_dirs.
/// Exact for pairs of boxes (their extremal directions are appended);
/// otherwise a lower bound converging as n_dirs grows.
inline double hausdorff_distance(const ConvexBody& a, const ConvexBody& b,
                                 int n_dirs) {
  const int n = ambient_dim(a);
  if (ambient_dim(b) != n)
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  if (n_dirs < 2 * n)
    throw std::invalid_argument("hausdorff_distance: n_dirs < 2N");
  std::vector<Vec> dirs = sphere_directions(n, n_dirs);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  if (const auto* ba = std::get_if<Box>(&a))
    if (const auto* bb = std::get_if<Box>(&b))
      detail::box_pair_directions(*ba, *bb, dirs);
  double best = 0.0;
  for (const Vec& u : dirs)
    best = std::max(best, std::abs(support_value(a, u) - support_value(b, u)));
  return best;
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

namespace detail {

// Scaling about the origin; s = 0 collapses to a point (internal use only,
// the public transform keeps lambda > 0).
inline ConvexBody scale_about_origin(const ConvexBody& b, double s) {
  if (const auto* box = std::get_if<Box>(&b)) {
    Vec lo = s * box->lo, hi = s * box->hi;
    if (s < 0) lo.swap(hi);
    return Box{std::move(lo), std::move(hi)};
  }
  if (const auto* z = std::get_if<Zonotope>(&b)) {
    std::vector<Vec> gens;
    gens.reserve(z->generators.size());
    if (s != 0.0)
      for (const Vec& g : z->generators) gens.push_back(s * g);
    return Zonotope{s * z->base, std::move(gens)};
  }
  const auto& e = std::get<EmbeddedBody>(b);
  std::variant<Box, Zonotope> inner = std::visit(
      [&](const auto& body) {
        ConvexBody scaled = scale_about_origin(ConvexBody(body), s);
        if (auto* bx = std::get_if<Box>(&scaled))
          return std::variant<Box, Zonotope>(std::move(*bx));
        return std::variant<Box, Zonotope>(std::get<Zonotope>(std::move(scaled)));
      },
      e.body);
  return EmbeddedBody{e.frame, s * e.offset, std::move(inner)};
}

}  // namespace detail

/// y = lambda * (reflect ? -x : x) + v, applied set-wise. Boxes map to
/// boxes, zonotopes to zonotopes; V_k scales by lambda^k.
inline ConvexBody transform_body(const ConvexBody& b, double lambda,
                                 const Vec& v, bool reflect) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("transform_body: lambda must be positive");
  const int n = ambient_dim(b);
  if (v.size() != 0 && v.size() != n)
    throw std::invalid_argument("transform_body: translation dimension mismatch");
  ConvexBody out = detail::scale_about_origin(b, reflect ? -lambda : lambda);
  if (v.size() == 0) return out;
  if (auto* box = std::get_if<Box>(&out)) {
    box->lo += v;
    box->hi += v;
  } else if (auto* z = std::get_if<Zonotope>(&out)) {
    z->base += v;
  } else {
    std::get<EmbeddedBody>(out).offset += v;
  }
  return out;
}

inline ConvexBody transform_body(const ConvexBody& b, double lambda) {
  return transform_body(b, lambda, Vec(), false);
}

/// Applies an orthogonal matrix (columns of a full frame). Boxes are not
/// closed under rotation; zonotopes and embedded bodies are.
inline ConvexBody rotate_body(const ConvexBody& b, const Eigen::MatrixXd& r) {
  const int n = ambient_dim(b);
  if (r.rows() != n || r.cols() != n)
    throw std::invalid_argument("rotate_body: matrix shape mismatch");
  if (std::holds_alternative<Box>(b))
    throw std::invalid_argument("rotate_body: boxes are not rotation-closed");
  if (const auto* z = std::get_if<Zonotope>(&b)) {
    std::vector<Vec> gens;
    gens.reserve(z->generators.size());
    for (const Vec& g : z->generators) gens.push_back(r * g);
    return Zonotope{r * z->base, std::move(gens)};
  }
  const auto& e = std::get<EmbeddedBody>(b);
  std::vector<Vec> vs;
  vs.reserve(e.frame.vectors.size());
  for (const Vec& f : e.frame.vectors) vs.push_back(r * f);
  return EmbeddedBody{Frame::make(std::move(vs)), r * e.offset, e.body};
}

// ---------------------------------------------------------------------------
// Box lattice operations
// ---------------------------------------------------------------------------

inline std::optional<Box> box_intersect(const Box& a, const Box& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("box_intersect: dimension mismatch");
  Vec lo = a.lo.cwiseMax(b.lo);
  Vec hi = a.hi.cwiseMin(b.hi);
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return std::nullopt;
  return Box{std::move(lo), std::move(hi)};
}

inline bool box_contains_box(const Box& outer, const Box& inner,
                             double tol = kTightTol) {
  for (Eigen::Index i = 0; i < outer.lo.size(); ++i) {
    const double scale = std::max(1.0, std::abs(outer.lo[i]) + std::abs(outer.hi[i]));
    if (inner.lo[i] < outer.lo[i] - tol * scale) return false;
    if (inner.hi[i] > outer.hi[i] + tol * scale) return false;
  }
  return true;
}

/// Bounding box of the union iff that union is convex, otherwise nullopt.
/// Full-dimensional case: the union is convex exactly when
/// Vol(a) + Vol(b) - Vol(a∩b) fills the bounding box. Degenerate boxes are
/// tested the same way inside their common affine hull; differing hulls
/// without containment are never convex.
inline std::optional<Box> box_union_if_convex(const Box& a, const Box& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("box_union_if_convex: dimension mismatch");
  if (box_contains_box(a, b)) return a;
  if (box_contains_box(b, a)) return b;

  const int n = a.dim();
  std::vector<int> free_axes;
  for (int i = 0; i < n; ++i) {
    const bool da = a.side(i) == 0.0, db = b.side(i) == 0.0;
    if (da != db) return std::nullopt;  // affine hulls differ
    if (da && db) {
      if (a.lo[i] != b.lo[i]) return std::nullopt;  // parallel hulls
    } else {
      free_axes.push_back(i);
    }
  }
  // free_axes nonempty here: both boxes points would have meant containment.
  double va = 1.0, vb = 1.0, vi = 1.0, vbb = 1.0;
  bool disjoint = false;
  for (int i : free_axes) {
    va *= a.side(i);
    vb *= b.side(i);
    const double ilo = std::max(a.lo[i], b.lo[i]);
    const double ihi = std::min(a.hi[i], b.hi[i]);
    if (ilo > ihi)
      disjoint = true;
    else
      vi *= ihi - ilo;
    vbb *= std::max(a.hi[i], b.hi[i]) - std::min(a.lo[i], b.lo[i]);
  }
  if (disjoint) vi = 0.0;
  const double lhs = va + vb - vi;
  if (std::abs(lhs - vbb) > kExactRelTol * std::max(1.0, vbb))
    return std::nullopt;
  return Box{a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi)};
}

// ---------------------------------------------------------------------------
// Zonotope helpers
// ---------------------------------------------------------------------------

inline Zonotope box_as_zonotope(const Box& b) {
  std::vector<Vec> gens;
  for (int i = 0; i < b.dim(); ++i) {
    const double s = b.side(i);
    if (s != 0.0) {
      Vec g = Vec::Zero(b.dim());
      g[i] = s;
      gens.push_back(std::move(g));
    }
  }
  return Zonotope{b.lo, std::move(gens)};
}

inline Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Vec> gens = a.generators;
  gens.insert(gens.end(), b.generators.begin(), b.generators.end());
  return Zonotope{a.base + b.base, std::move(gens)};
}

// ---------------------------------------------------------------------------
// Containment, equality, bounding boxes
// ---------------------------------------------------------------------------

inline Box bounding_box(const ConvexBody& b) {
  const int n = ambient_dim(b);
  if (const auto* box = std::get_if<Box>(&b)) return *box;
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    hi[i] = support_value(b, e);
    lo[i] = -support_value(b, -e);
  }
  return Box{std::move(lo), std::move(hi)};
}

inline bool body_equal(const ConvexBody& a, const ConvexBody& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ba = std::get_if<Box>(&a)) {
    const auto& bb = std::get<Box>(b);
    return ba->lo == bb.lo && ba->hi == bb.hi;
  }
  if (const auto* za = std::get_if<Zonotope>(&a)) {
    const auto& zb = std::get<Zonotope>(b);
    if (za->base != zb.base) return false;
    if (za->generators.size() != zb.generators.size()) return false;
    for (std::size_t i = 0; i < za->generators.size(); ++i)
      if (za->generators[i] != zb.generators[i]) return false;
    return true;
  }
  const auto& ea = std::get<EmbeddedBody>(a);
  const auto& eb = std::get<EmbeddedBody>(b);
  if (ea.offset != eb.offset) return false;
  if (ea.frame.vectors.size() != eb.frame.vectors.size()) return false;
  for (std::size_t i = 0; i < ea.frame.vectors.size(); ++i)
    if (ea.frame.vectors[i] != eb.frame.vectors[i]) return false;
  return body_equal(std::visit([](const auto& v) { return ConvexBody(v); }, ea.body),
                    std::visit([](const auto& v) { return ConvexBody(v); }, eb.body));
}

/// Containment via support dominance: exact for box/box, otherwise checked
/// on a deterministic direction set (sound at desk scale; the test
/// generators only emit pairs this resolves correctly).
inline bool body_contains(const ConvexBody& outer, const ConvexBody& inner,
                          int n_dirs = 256) {
  const int n = ambient_dim(outer);
  if (ambient_dim(inner) != n)
    throw std::invalid_argument("body_contains: dimension mismatch");
  if (const auto* bo = std::get_if<Box>(&outer))
    if (const auto* bi = std::get_if<Box>(&inner))
      return box_contains_box(*bo, *bi);
  std::vector<Vec> dirs = sphere_directions(n, std::max(n_dirs, 2 * n));
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  // frame vectors and offset gaps catch affine-hull mismatches of embedded
  // bodies
  for (const ConvexBody* bp : {&outer, &inner}) {
    if (const auto* e = std::get_if<EmbeddedBody>(bp)) {
      for (const Vec& f : e->frame.vectors) {
        dirs.push_back(f);
        dirs.push_back(-f);
      }
      if (e->offset.norm() > 0) {
        dirs.push_back(e->offset / e->offset.norm());
        dirs.push_back(-e->offset / e->offset.norm());
      }
    }
  }
  double scale = 1.0;
  for (const Vec& u : dirs)
    scale = std::max(scale, std::abs(support_value(outer, u)));
  for (const Vec& u : dirs)
    if (support_value(inner, u) > support_value(outer, u) + kTightTol * scale)
      return false;
  return true;
}

/// Volume of the unit ball in R^j.
inline double unit_ball_volume(int j) {
  if (j < 0) throw std::out_of_range("unit_ball_volume: negative dimension");
  double v0 = 1.0, v1 = 2.0;  // kappa_0, kappa_1
  if (j == 0) return v0;
  if (j == 1) return v1;
  double prev = v0, cur = v1;
  for (int d = 2; d <= j; ++d) {
    const double next = prev * 2.0 * kPi / d;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace qcval
