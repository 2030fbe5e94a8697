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

// Level profiles u_k(t) = V_k(L_t(f)), the atomic level-set measures
// S_k(f;·) of simple functions (minus the distributional derivative of
// u_k), and integration against them. Atoms sit exactly at the thresholds;
// nothing is ever binned or smoothed.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qcval/geometry.hpp"
#include "qcval/qcf.hpp"

namespace qcval {

// ---------------------------------------------------------------------------
// Densities: closed-form tagged continuous functions on [0, infinity)
// ---------------------------------------------------------------------------

/// Continuous density, one of: polynomial (coefficients in ascending
/// degree), hinge max(0, t-a), or a piecewise-linear knot table (clamped to
/// its end values outside the knot range).
class Density {
 public:
  enum class Kind { kPoly, kHinge, kPwl };

  static Density zero() { return poly({}); }

  static Density poly(std::vector<double> coeffs) {
    Density d;
    d.kind_ = Kind::kPoly;
    d.coeffs_ = std::move(coeffs);
    return d;
  }

  static Density hinge(double a) {
    if (!(a >= 0.0)) throw std::invalid_argument("Density::hinge: a must be >= 0");
    Density d;
    d.kind_ = Kind::kHinge;
    d.a_ = a;
    return d;
  }

  static Density pwl(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw std::invalid_argument("Density::pwl: no knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (!(knots[i].first < knots[i + 1].first))
        throw std::invalid_argument("Density::pwl: knots must strictly increase");
    Density d;
    d.kind_ = Kind::kPwl;
    d.knots_ = std::move(knots);
    return d;
  }

  Kind kind() const { return kind_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double hinge_offset() const { return a_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  double operator()(double t) const {
    switch (kind_) {
      case Kind::kPoly: {
        double v = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
          v = v * t + *it;
        return v;
      }
      case Kind::kHinge:
        return std::max(0.0, t - a_);
      case Kind::kPwl: {
        if (t <= knots_.front().first) return knots_.front().second;
        if (t >= knots_.back().first) return knots_.back().second;
        auto it = std::lower_bound(
            knots_.begin(), knots_.end(), t,
            [](const std::pair<double, double>& k, double v) { return k.first < v; });
        const auto& [t1, v1] = *it;
        const auto& [t0, v0] = *(it - 1);
        if (t == t1) return v1;
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      }
    }
    return 0.0;
  }

  bool is_identically_zero() const {
    switch (kind_) {
      case Kind::kPoly:
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](double c) { return c == 0.0; });
      case Kind::kHinge:
        return false;
      case Kind::kPwl:
        return std::all_of(knots_.begin(), knots_.end(),
                           [](const auto& k) { return k.second == 0.0; });
    }
    return false;
  }

  /// Closed-form decision of "vanishes on [0, delta]", backed by a grid
  /// scan. Exact zeros only: these densities are constructed, not measured.
  bool vanishes_on(double delta) const {
    bool closed_form = false;
    switch (kind_) {
      case Kind::kPoly:
        closed_form = is_identically_zero();
        break;
      case Kind::kHinge:
        closed_form = a_ >= delta;
        break;
      case Kind::kPwl: {
        closed_form = true;
        for (const auto& [t, v] : knots_)
          if (t <= delta && v != 0.0) closed_form = false;
        if ((*this)(delta) != 0.0) closed_form = false;
        if (knots_.front().second != 0.0) closed_form = false;  // clamp below
        break;
      }
    }
    if (!closed_form) return false;
    for (int i = 0; i <= 64; ++i)
      if ((*this)(delta * i / 64.0) != 0.0) return false;
    return true;
  }

 private:
  Kind kind_ = Kind::kPoly;
  std::vector<double> coeffs_;
  double a_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

// ---------------------------------------------------------------------------
// Level profiles and measures
// ---------------------------------------------------------------------------

/// u_k as a right-closed step function: value V_k(K_i) on (t_{i-1}, t_i],
/// zero past the last threshold.
struct LevelProfile {
  int k = 0;
  std::vector<double> breakpoints;
  std::vector<double> values;

  double value_at(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("LevelProfile: t must be positive");
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it == breakpoints.end()) return 0.0;
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
  }
};

/// Finite atomic measure on (0, infinity), atoms strictly increasing.
struct DiscreteMeasure {
  std::vector<std::pair<double, double>> atoms;  // (t, mass)

  double total_mass() const {
    double m = 0.0;
    for (const auto& [t, mass] : atoms) m += mass;
    return m;
  }
};

inline LevelProfile level_profile(const SimpleQCF& f, int k) {
  if (!f.is_zero() && (k < 0 || k > f.dim()))
    throw std::out_of_range("level_profile: k out of range");
  if (k < 0) throw std::out_of_range("level_profile: k out of range");
  LevelProfile p;
  p.k = k;
  for (const Level& lv : f.levels()) {
    p.breakpoints.push_back(lv.t);
    p.values.push_back(intrinsic_volume(lv.body, k));
  }
  return p;
}

/// S_k(f;·) for a simple f: an atom at each threshold t_i with mass
/// V_k(K_i) - V_k(K_{i+1}) (taking K_{m+1} empty). Exact-zero masses are
/// dropped, so e.g. S_0 is the single Dirac mass at M(f).
inline DiscreteMeasure level_measure(const SimpleQCF& f, int k) {
  const LevelProfile p = level_profile(f, k);
  DiscreteMeasure m;
  const std::size_t cnt = p.breakpoints.size();
  for (std::size_t i = 0; i < cnt; ++i) {
    const double next = (i + 1 < cnt) ? p.values[i + 1] : 0.0;
    const double mass = p.values[i] - next;
    if (mass != 0.0) m.atoms.push_back({p.breakpoints[i], mass});
  }
  return m;
}

/// ∫ phi dm = Σ phi(t_i) m_i.
inline double integrate(const DiscreteMeasure& m, const Density& phi) {
  double v = 0.0;
  for (const auto& [t, mass] : m.atoms) {
    const double ph = phi(t);
    if (!std::isfinite(ph))
      throw std::invalid_argument("integrate: density not finite at an atom");
    v += ph * mass;
  }
  return v;
}

inline double integrate(const DiscreteMeasure& m,
                        const std::function<double(double)>& phi) {
  double v = 0.0;
  for (const auto& [t, mass] : m.atoms) v += phi(t) * mass;
  return v;
}

// ---------------------------------------------------------------------------
// Distributional derivative identity
// ---------------------------------------------------------------------------

/// Residual of the defining identity
///   ∫ psi'(t) u_k(t) dt = ∫ psi(t) dS_k(f;t)
/// for compactly supported psi. The left side telescopes exactly over the
/// constancy intervals of u_k, so the residual is pure roundoff.
inline double distributional_check(const SimpleQCF& f, int k, const Density& psi,
                                   double quadrature_step) {
  // compact support in (0, infinity): only piecewise-linear tables (or the
  // zero density) qualify among the closed forms
  if (psi.kind() == Density::Kind::kHinge)
    throw std::invalid_argument("distributional_check: hinge support reaches infinity");
  if (psi.kind() == Density::Kind::kPoly && !psi.is_identically_zero())
    throw std::invalid_argument("distributional_check: polynomial support reaches infinity");
  if (psi.kind() == Density::Kind::kPwl) {
    if (!(psi.knots().front().first > 0.0) || psi.knots().front().second != 0.0 ||
        psi.knots().back().second != 0.0)
      throw std::invalid_argument("distributional_check: psi support touches 0 or infinity");
  }
  double min_gap = std::numeric_limits<double>::infinity();
  const auto& lv = f.levels();
  for (std::size_t i = 0; i + 1 < lv.size(); ++i)
    min_gap = std::min(min_gap, lv[i + 1].t - lv[i].t);
  if (!(quadrature_step > 0.0) ||
      (std::isfinite(min_gap) && quadrature_step > min_gap / 10.0))
    throw std::invalid_argument(
        "distributional_check: quadrature_step must be positive and at most a tenth of "
        "the smallest threshold gap");

  const LevelProfile p = level_profile(f, k);
  double lhs = 0.0;
  double prev_t = 0.0;
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    lhs += p.values[i] * (psi(p.breakpoints[i]) - psi(prev_t));
    prev_t = p.breakpoints[i];
  }
  const double rhs = integrate(level_measure(f, k), psi);
  return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Cone reference measure
// ---------------------------------------------------------------------------

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& g, double a,
                               double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate_adaptive(const std::function<double(double)>& g, double a,
                                 double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = g(a), fm = g(m), fb = g(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

/// Analytic S_k of the cone function L_t = (1-t) * body: the continuous
/// measure with density k (1-t)^{k-1} V_k(body) on (0,1). Total mass is
/// V_k(body).
struct ConeReferenceMeasure {
  int k = 1;
  double vk = 0.0;  // V_k(body)

  double density(double t) const {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return k * std::pow(1.0 - t, k - 1) * vk;
  }

  double total_mass() const { return vk; }

  double integrate(const std::function<double(double)>& phi,
                   double tol = 1e-10) const {
    return detail::integrate_adaptive(
        [&](double t) { return phi(t) * density(t); }, 0.0, 1.0, tol);
  }

  double integrate(const Density& phi, double tol = 1e-10) const {
    return integrate([&](double t) { return phi(t); }, tol);
  }
};

using ConeMeasure = std::variant<ConeReferenceMeasure, DiscreteMeasure>;

/// k >= 1 gives the continuous descriptor; k = 0 collapses to the Dirac
/// mass at t = 1 and is returned as a DiscreteMeasure.
inline ConeMeasure cone_reference_measure(const ConvexBody& body, int k) {
  const int n = ambient_dim(body);
  if (k < 0 || k > n)
    throw std::out_of_range("cone_reference_measure: k out of range");
  if (k == 0) return DiscreteMeasure{{{1.0, 1.0}}};
  return ConeReferenceMeasure{k, intrinsic_volume(body, k)};
}

inline double integrate(const ConeMeasure& m, const Density& phi) {
  if (const auto* c = std::get_if<ConeReferenceMeasure>(&m)) return c->integrate(phi);
  return integrate(std::get<DiscreteMeasure>(m), phi);
}

}  // namespace qcval
