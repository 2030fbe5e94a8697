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

// Euclidean distance from a point to a convex body. Precomputes per-body
// structure once (polygon chains, H-representations, Gram matrices) so the
// per-query cost stays small inside Monte-Carlo loops.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "qcval/geometry.hpp"

namespace qcval {

namespace detail {

inline double point_segment_dist2(const Eigen::Vector2d& p,
                                  const Eigen::Vector2d& a,
                                  const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).squaredNorm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - a - t * ab).squaredNorm();
}

}  // namespace detail

/// Prepared exact (to solver tolerance) point-to-body distance oracle.
class BodyDistance {
 public:
  explicit BodyDistance(const ConvexBody& body) { build(body); }

  int dim() const { return n_; }

  double operator()(const Vec& x) const { return distance(x); }

  double distance(const Vec& x) const {
    switch (kind_) {
      case Kind::kBox:
        return box_distance(x);
      case Kind::kSegment1d: {
        const double v = x[0];
        if (v < seg_lo_) return seg_lo_ - v;
        if (v > seg_hi_) return v - seg_hi_;
        return 0.0;
      }
      case Kind::kPolygon2d:
        return polygon_distance(x);
      case Kind::kZonotopeNd:
        return zonotope_distance(x);
      case Kind::kEmbedded: {
        const Vec rel = x - offset_;
        const Vec coords = frame_.transpose() * rel;
        const double ortho2 = rel.squaredNorm() - coords.squaredNorm();
        const double din = inner_->distance(coords);
        return std::sqrt(std::max(0.0, ortho2) + din * din);
      }
    }
    return 0.0;
  }

  bool contains(const Vec& x, double tol = 1e-9) const {
    return distance(x) <= tol;
  }

  /// Decides dist(x, K) <= r with cheap bound filters before the solver;
  /// same answer as distance(x) <= r.
  bool within(const Vec& x, double r) const {
    switch (kind_) {
      case Kind::kBox:
        return box_distance(x) <= r;
      case Kind::kSegment1d: {
        const double v = x[0];
        return v >= seg_lo_ - r && v <= seg_hi_ + r;
      }
      case Kind::kPolygon2d: {
        if (x[0] < bb_lo_.x() - r || x[0] > bb_hi_.x() + r ||
            x[1] < bb_lo_.y() - r || x[1] > bb_hi_.y() + r)
          return false;
        return polygon_distance(x) <= r;
      }
      case Kind::kZonotopeNd: {
        double d2 = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          const double gap = std::max({lo_[i] - x[i], x[i] - hi_[i], 0.0});
          d2 += gap * gap;
        }
        if (d2 > r * r) return false;  // bbox is a lower bound on the distance
        if (full_dim_ && !hrep_.empty()) {
          double viol = 0.0;
          for (const auto& h : hrep_) {
            double dot = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i)
              dot += h.first[i] * (x[i] - center_[i]);
            viol = std::max(viol, std::abs(dot) - h.second);
            if (viol > r) return false;  // supporting-halfspace lower bound
          }
          if (viol <= 0.0) return true;  // inside the complete H-rep
        }
        return zonotope_distance(x) <= r;
      }
      case Kind::kEmbedded:
        return distance(x) <= r;
    }
    return false;
  }

 private:
  enum class Kind { kBox, kSegment1d, kPolygon2d, kZonotopeNd, kEmbedded };

  void build(const ConvexBody& body) {
    n_ = ambient_dim(body);
    if (const auto* b = std::get_if<Box>(&body)) {
      kind_ = Kind::kBox;
      lo_ = b->lo;
      hi_ = b->hi;
      return;
    }
    if (const auto* e = std::get_if<EmbeddedBody>(&body)) {
      kind_ = Kind::kEmbedded;
      frame_ = e->frame.matrix();
      offset_ = e->offset;
      inner_ = std::make_unique<BodyDistance>(std::visit(
          [](const auto& v) { return ConvexBody(v); }, e->body));
      return;
    }
    const auto& z = std::get<Zonotope>(body);
    if (n_ == 1) {
      kind_ = Kind::kSegment1d;
      seg_lo_ = z.base[0];
      seg_hi_ = z.base[0];
      for (const Vec& g : z.generators) {
        if (g[0] >= 0)
          seg_hi_ += g[0];
        else
          seg_lo_ += g[0];
      }
      return;
    }
    if (n_ == 2) {
      kind_ = Kind::kPolygon2d;
      build_polygon(z);
      return;
    }
    kind_ = Kind::kZonotopeNd;
    build_nd(z);
  }

  double box_distance(const Vec& x) const {
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double below = lo_[i] - x[i];
      const double above = x[i] - hi_[i];
      const double gap = std::max({below, above, 0.0});
      d2 += gap * gap;
    }
    return std::sqrt(d2);
  }

  // Zonogon boundary as a closed vertex chain: flip generators into the
  // upper half-plane, sort by angle, walk forward then backward.
  void build_polygon(const Zonotope& z) {
    Eigen::Vector2d start(z.base[0], z.base[1]);
    std::vector<Eigen::Vector2d> gens;
    for (const Vec& g : z.generators) {
      Eigen::Vector2d v(g[0], g[1]);
      if (v.squaredNorm() == 0.0) continue;
      if (v.y() < 0.0 || (v.y() == 0.0 && v.x() < 0.0)) {
        start += v;
        v = -v;
      }
      gens.push_back(v);
    }
    std::sort(gens.begin(), gens.end(),
              [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
              });
    verts_.clear();
    Eigen::Vector2d p = start;
    verts_.push_back(p);
    for (const auto& g : gens) {
      p += g;
      verts_.push_back(p);
    }
    for (const auto& g : gens) {
      p -= g;
      if (verts_.size() < 2 * gens.size()) verts_.push_back(p);
    }
    bb_lo_ = verts_.front();
    bb_hi_ = verts_.front();
    for (const auto& v : verts_) {
      bb_lo_ = bb_lo_.cwiseMin(v);
      bb_hi_ = bb_hi_.cwiseMax(v);
    }
  }

  double polygon_distance(const Vec& x) const {
    const Eigen::Vector2d p(x[0], x[1]);
    if (verts_.size() == 1) return (p - verts_[0]).norm();
    // strict interior test (counter-clockwise chain); degenerate chains
    // never pass it and fall through to edge distances, which is correct
    const double scale2 = (bb_hi_ - bb_lo_).squaredNorm() + 1.0;
    bool inside = true;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const Eigen::Vector2d& a = verts_[i];
      const Eigen::Vector2d& b = verts_[(i + 1) % verts_.size()];
      const Eigen::Vector2d e = b - a;
      const double cross = e.x() * (p.y() - a.y()) - e.y() * (p.x() - a.x());
      if (cross < kTightTol * scale2) {
        inside = false;
        break;
      }
    }
    if (inside) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const Eigen::Vector2d& a = verts_[i];
      const Eigen::Vector2d& b = verts_[(i + 1) % verts_.size()];
      best = std::min(best, detail::point_segment_dist2(p, a, b));
    }
    return std::sqrt(best);
  }

  void build_nd(const Zonotope& z) {
    base_ = z.base;
    const int m = static_cast<int>(z.generators.size());
    gens_nd_.resize(n_, m);
    for (int j = 0; j < m; ++j) gens_nd_.col(j) = z.generators[j];
    center_ = z.base;
    for (const Vec& g : z.generators) center_ += 0.5 * g;
    gram_ = gens_nd_.transpose() * gens_nd_;
    gen_norm2_ = gram_.diagonal();
    // H-representation from pairwise cross products; complete iff the
    // zonotope is full-dimensional, which we verify via the rank
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gens_nd_);
    lu.setThreshold(1e-10);
    full_dim_ = (lu.rank() == n_);
    if (full_dim_ && n_ == 3) {
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          Eigen::Vector3d a = gens_nd_.col(i).head<3>();
          Eigen::Vector3d b = gens_nd_.col(j).head<3>();
          Eigen::Vector3d nrm = a.cross(b);
          const double len = nrm.norm();
          if (len < 1e-12 * (a.norm() * b.norm() + 1e-300)) continue;
          nrm /= len;
          bool dup = false;
          for (const auto& h : hrep_)
            if (std::abs(std::abs(h.first.dot(nrm)) - 1.0) < 1e-12) {
              dup = true;
              break;
            }
          if (dup) continue;
          double s = 0.0;
          for (int g = 0; g < m; ++g)
            s += std::abs(gens_nd_.col(g).dot(Vec(nrm))) * 0.5;
          hrep_.push_back({Vec(nrm), s});
        }
    }
    // unconstrained least-squares map for warm starts
    pinv_ = gram_.completeOrthogonalDecomposition().pseudoInverse() *
            gens_nd_.transpose();
    Box bb = bounding_box(ConvexBody(z));
    lo_ = bb.lo;
    hi_ = bb.hi;
  }

  double zonotope_distance(const Vec& x) const {
    const int m = static_cast<int>(gram_.rows());
    if (m == 0) return (x - base_).norm();
    if (full_dim_ && !hrep_.empty()) {
      bool in = true;
      for (const auto& h : hrep_) {
        if (std::abs(h.first.dot(x - center_)) > h.second) {
          in = false;
          break;
        }
      }
      if (in) return 0.0;
    }
    // warm start from the clamped unconstrained solution, then cyclic
    // coordinate descent on the box-constrained least squares
    Vec lam = (pinv_ * (x - base_)).cwiseMax(0.0).cwiseMin(1.0);
    Vec r = base_ + gens_nd_ * lam - x;
    for (int sweep = 0; sweep < 200; ++sweep) {
      double max_delta = 0.0;
      for (int i = 0; i < m; ++i) {
        if (gen_norm2_[i] == 0.0) continue;
        const double gi_r = gens_nd_.col(i).dot(r);
        const double target = std::clamp(lam[i] - gi_r / gen_norm2_[i], 0.0, 1.0);
        const double delta = target - lam[i];
        if (delta != 0.0) {
          lam[i] = target;
          r += delta * gens_nd_.col(i);
          max_delta = std::max(max_delta, std::abs(delta));
        }
      }
      if (max_delta < 1e-13) break;
    }
    return r.norm();
  }

  Kind kind_ = Kind::kBox;
  int n_ = 0;
  // box
  Vec lo_, hi_;
  // 1d segment
  double seg_lo_ = 0.0, seg_hi_ = 0.0;
  // 2d polygon
  std::vector<Eigen::Vector2d> verts_;
  Eigen::Vector2d bb_lo_, bb_hi_;
  // nd zonotope
  Vec base_, center_;
  Eigen::MatrixXd gens_nd_, gram_, pinv_;
  Vec gen_norm2_;
  std::vector<std::pair<Vec, double>> hrep_;
  bool full_dim_ = false;
  // embedded
  Eigen::MatrixXd frame_;
  Vec offset_;
  std::unique_ptr<BodyDistance> inner_;
};

/// Point membership at the default solver tolerance. Boxes are exact.
inline bool body_contains_point(const ConvexBody& b, const Vec& x,
                                double tol = 1e-9) {
  if (const auto* box = std::get_if<Box>(&b)) return box->contains_point(x);
  return BodyDistance(b).contains(x, tol);
}

}  // namespace qcval
