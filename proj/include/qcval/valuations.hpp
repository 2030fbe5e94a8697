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

// Integral, monotone and max-type valuations on simple quasi-concave
// functions, black-box valuation oracles with declared invariance flags,
// and executable forms of the defining axioms.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcval/measures.hpp"
#include "qcval/qcf.hpp"

namespace qcval {

/// The tuple (phi_0..phi_N, delta) defining mu(f) = Σ_k ∫ phi_k dS_k(f;·).
/// Construction enforces: every phi_k with k >= 1 vanishes on [0, delta],
/// and phi_0(0) = 0.
struct DensitySpec {
  std::vector<Density> phis;
  double delta = 0.0;

  static DensitySpec make(std::vector<Density> phis_, double delta_) {
    if (phis_.empty()) throw std::invalid_argument("DensitySpec: no densities");
    if (!(delta_ > 0.0)) throw std::invalid_argument("DensitySpec: delta must be positive");
    if (phis_.front()(0.0) != 0.0)
      throw std::invalid_argument("DensitySpec: phi_0(0) must be 0");
    for (std::size_t k = 1; k < phis_.size(); ++k)
      if (!phis_[k].vanishes_on(delta_))
        throw std::invalid_argument("DensitySpec: phi_" + std::to_string(k) +
                                    " does not vanish on [0, delta]");
    return DensitySpec{std::move(phis_), delta_};
  }

  int dim() const { return static_cast<int>(phis.size()) - 1; }
};

/// Discrete stand-in for the monotone representation mu(f) = Σ_k ∫ u_k dν_k:
/// the ν_k are finite atomic approximations of non-atomic Radon measures,
/// with nonnegative masses and, for k >= 1, support in [delta, infinity).
struct MonotoneSpec {
  std::vector<DiscreteMeasure> nus;
  double delta = 0.0;

  static MonotoneSpec make(std::vector<DiscreteMeasure> nus_, double delta_) {
    if (nus_.empty()) throw std::invalid_argument("MonotoneSpec: no measures");
    if (!(delta_ > 0.0)) throw std::invalid_argument("MonotoneSpec: delta must be positive");
    for (std::size_t k = 0; k < nus_.size(); ++k) {
      double prev = 0.0;
      for (const auto& [t, mass] : nus_[k].atoms) {
        if (mass < 0.0)
          throw std::invalid_argument("MonotoneSpec: negative mass in nu_" + std::to_string(k));
        if (!(t > prev))
          throw std::invalid_argument("MonotoneSpec: atoms of nu_" + std::to_string(k) +
                                      " must strictly increase and be positive");
        if (k >= 1 && t < delta_)
          throw std::invalid_argument("MonotoneSpec: nu_" + std::to_string(k) +
                                      " has support below delta");
        prev = t;
      }
    }
    return MonotoneSpec{std::move(nus_), delta_};
  }

  int dim() const { return static_cast<int>(nus.size()) - 1; }
};

struct ValuationFlags {
  bool translation_invariant = false;
  bool even = false;
  bool rotation_invariant = false;
  std::optional<int> homogeneous_degree;
};

/// Black-box evaluator f -> mu(f) with declared invariances. Evaluators
/// must be pure; the harness may call one concurrently.
struct ValuationOracle {
  std::function<double(const SimpleQCF&)> evaluator;
  ValuationFlags flags;

  double operator()(const SimpleQCF& f) const { return evaluator(f); }
};

namespace detail {
inline void check_qcf_dim(const SimpleQCF& f, int n, const char* who) {
  if (!f.is_zero() && f.dim() != n)
    throw std::invalid_argument(std::string(who) + ": function dimension " +
                                std::to_string(f.dim()) + " != spec dimension " +
                                std::to_string(n));
}
}  // namespace detail

/// mu(f) = Σ_k ∫ phi_k(t) dS_k(f;t). On f = s I_K this collapses to
/// Σ_k phi_k(s) V_k(K).
inline double eval_integral(const DensitySpec& spec, const SimpleQCF& f) {
  detail::check_qcf_dim(f, spec.dim(), "eval_integral");
  if (f.is_zero()) return 0.0;
  double v = 0.0;
  for (int k = 0; k <= spec.dim(); ++k) {
    const Density& phi = spec.phis[static_cast<std::size_t>(k)];
    if (phi.is_identically_zero()) continue;
    v += integrate(level_measure(f, k), phi);
  }
  return v;
}

/// mu(f) = Σ_k Σ_atoms u_k(t) ν_k-mass; monotone under pointwise ordering.
inline double eval_monotone(const MonotoneSpec& spec, const SimpleQCF& f) {
  detail::check_qcf_dim(f, spec.dim(), "eval_monotone");
  if (f.is_zero()) return 0.0;
  double v = 0.0;
  for (int k = 0; k <= spec.dim(); ++k) {
    const auto& nu = spec.nus[static_cast<std::size_t>(k)];
    if (nu.atoms.empty()) continue;
    const LevelProfile u = level_profile(f, k);
    for (const auto& [t, mass] : nu.atoms) v += u.value_at(t) * mass;
  }
  return v;
}

/// mu(f) = phi0(M(f)); 0-homogeneous because transforms keep thresholds.
inline double eval_max_type(const Density& phi0, const SimpleQCF& f) {
  if (phi0(0.0) != 0.0)
    throw std::invalid_argument("eval_max_type: phi0(0) must be 0");
  return f.is_zero() ? 0.0 : phi0(f.max_value());
}

inline ValuationOracle make_integral_oracle(DensitySpec spec) {
  ValuationFlags flags;
  flags.translation_invariant = true;
  flags.even = true;
  flags.rotation_invariant = true;
  int nonzero = -1, count = 0;
  for (std::size_t k = 0; k < spec.phis.size(); ++k)
    if (!spec.phis[k].is_identically_zero()) {
      nonzero = static_cast<int>(k);
      ++count;
    }
  if (count == 1) flags.homogeneous_degree = nonzero;
  if (count == 0) flags.homogeneous_degree = 0;  // the zero valuation
  return ValuationOracle{
      [spec = std::move(spec)](const SimpleQCF& f) { return eval_integral(spec, f); },
      flags};
}

inline ValuationOracle make_monotone_oracle(MonotoneSpec spec) {
  ValuationFlags flags;
  flags.translation_invariant = true;
  flags.even = true;
  flags.rotation_invariant = true;
  return ValuationOracle{
      [spec = std::move(spec)](const SimpleQCF& f) { return eval_monotone(spec, f); },
      flags};
}

inline ValuationOracle make_max_type_oracle(Density phi0) {
  if (phi0(0.0) != 0.0)
    throw std::invalid_argument("make_max_type_oracle: phi0(0) must be 0");
  ValuationFlags flags;
  flags.translation_invariant = true;
  flags.even = true;
  flags.rotation_invariant = true;
  flags.homogeneous_degree = 0;
  return ValuationOracle{
      [phi0 = std::move(phi0)](const SimpleQCF& f) { return eval_max_type(phi0, f); },
      flags};
}

inline ValuationOracle oracle_sum(ValuationOracle a, ValuationOracle b) {
  ValuationFlags flags;
  flags.translation_invariant =
      a.flags.translation_invariant && b.flags.translation_invariant;
  flags.even = a.flags.even && b.flags.even;
  flags.rotation_invariant = a.flags.rotation_invariant && b.flags.rotation_invariant;
  if (a.flags.homogeneous_degree && b.flags.homogeneous_degree &&
      *a.flags.homogeneous_degree == *b.flags.homogeneous_degree)
    flags.homogeneous_degree = a.flags.homogeneous_degree;
  return ValuationOracle{[a = std::move(a), b = std::move(b)](const SimpleQCF& f) {
                           return a(f) + b(f);
                         },
                         flags};
}

/// |mu(f) + mu(g) - mu(f∨g) - mu(f∧g)|. Throws NotQuasiConcave for
/// incompatible pairs (reported by callers, not a failure).
inline double check_valuation_identity(const ValuationOracle& mu, const SimpleQCF& f,
                                       const SimpleQCF& g) {
  const SimpleQCF vee = lattice_max(f, g);
  const SimpleQCF wedge = lattice_min(f, g);
  return std::abs(mu(f) + mu(g) - mu(vee) - mu(wedge));
}

/// |mu(f) - mu(T f)| for the rigid motion assembled from the arguments.
/// Only invariances the oracle declares may be exercised.
inline double check_invariance(const ValuationOracle& mu, const SimpleQCF& f,
                               const Vec& v, bool reflect,
                               const std::optional<Frame>& frame_rotation = {}) {
  SimpleQCF g = f;
  if (frame_rotation) {
    if (!mu.flags.rotation_invariant)
      throw std::invalid_argument("check_invariance: oracle does not declare rotation invariance");
    if (frame_rotation->size() != frame_rotation->ambient_dim())
      throw std::invalid_argument("check_invariance: rotation frame must be full");
    g = rotate_qcf(g, frame_rotation->matrix());
  }
  if (reflect) {
    if (!mu.flags.even)
      throw std::invalid_argument("check_invariance: oracle does not declare evenness");
    g = transform_qcf(g, 1.0, Vec(), true);
  }
  if (v.size() != 0 && v.norm() != 0.0) {
    if (!mu.flags.translation_invariant)
      throw std::invalid_argument("check_invariance: oracle does not declare translation invariance");
    g = transform_qcf(g, 1.0, v, false);
  }
  return std::abs(mu(f) - mu(g));
}

}  // namespace qcval
