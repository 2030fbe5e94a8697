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

// Homogeneous decomposition of translation-invariant valuations via the
// inverse Vandermonde coefficients, density recovery for N- and
// 0-homogeneous valuations, and Klain functions with reconstruction and
// separation probes.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcval/measures.hpp"
#include "qcval/qcf.hpp"
#include "qcval/rng.hpp"
#include "qcval/valuations.hpp"

namespace qcval {

/// Inverse of the Vandermonde-type matrix M[r][k] = (r+1)^k, r,k = 0..N.
/// c[k][j-1] is the weight of the dilation by j in the degree-k component.
struct VandermondeCoeffs {
  int n = 0;
  std::vector<std::vector<double>> c;  // (N+1) x (N+1)
};

/// Exact inverse through the Lagrange basis at the integer nodes 1..N+1:
/// the j-th column of the inverse holds the coefficients of
/// l_j(x) = prod_{r != j} (x - r) / (j - r). Numerators and denominators
/// are exact integers (evaluated in 128-bit arithmetic), so each entry is
/// a single correctly rounded division.
inline VandermondeCoeffs vandermonde_coeffs(int n) {
  if (n < 1) throw std::invalid_argument("vandermonde_coeffs: N must be >= 1");
  if (n > 20) throw std::invalid_argument("vandermonde_coeffs: N > 20 unsupported");
  VandermondeCoeffs out;
  out.n = n;
  out.c.assign(static_cast<std::size_t>(n) + 1,
               std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int j = 1; j <= n + 1; ++j) {
    std::vector<__int128> num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = 1;  // running product prod (x - r)
    int deg = 0;
    __int128 den = 1;
    for (int r = 1; r <= n + 1; ++r) {
      if (r == j) continue;
      for (int d = deg; d >= 0; --d) {
        num[static_cast<std::size_t>(d) + 1] += num[static_cast<std::size_t>(d)];
        num[static_cast<std::size_t>(d)] *= -r;
      }
      ++deg;
      den *= (j - r);
    }
    for (int k = 0; k <= n; ++k)
      out.c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j - 1)] =
          static_cast<double>(num[static_cast<std::size_t>(k)]) /
          static_cast<double>(den);
  }
  return out;
}

/// max |(M c - I)_{ij}|, for tests and reports.
inline double vandermonde_identity_residual(const VandermondeCoeffs& vc) {
  const int m = vc.n + 1;
  double worst = 0.0;
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      double pw = 1.0;
      for (int k = 0; k < m; ++k) {
        s += pw * vc.c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        pw *= (r + 1);
      }
      worst = std::max(worst, std::abs(s - ((r == j) ? 1.0 : 0.0)));
    }
  return worst;
}

/// mu_k(f) = Σ_j c_{k,j} mu(f ∘ g_j), the degree-k piece of the McMullen
/// type decomposition. The components sum back to mu(f) and each is
/// k-homogeneous under dilation.
inline double homogeneous_component(const ValuationOracle& mu, int k,
                                    const SimpleQCF& f) {
  if (!mu.flags.translation_invariant)
    throw std::invalid_argument(
        "homogeneous_component: oracle must declare translation invariance");
  if (f.is_zero()) return 0.0;
  const int n = f.dim();
  if (k < 0 || k > n)
    throw std::out_of_range("homogeneous_component: k out of range");
  const VandermondeCoeffs vc = vandermonde_coeffs(n);
  double v = 0.0;
  for (int j = 1; j <= n + 1; ++j)
    v += vc.c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j - 1)] *
         mu(transform_qcf(f, static_cast<double>(j)));
  return v;
}

struct DecompositionReport {
  double mu_value = 0.0;
  std::vector<double> components;              // mu_0(f) .. mu_N(f)
  double sum_residual = 0.0;                   // |mu(f) - sum mu_k(f)|
  std::vector<double> lambdas;
  std::vector<std::vector<double>> homogeneity_residuals;  // [k][lambda]
};

/// Evaluates the decomposition identity and the lambda^k homogeneity of
/// every component at the supplied dilation factors.
inline DecompositionReport verify_decomposition(const ValuationOracle& mu,
                                                const SimpleQCF& f,
                                                const std::vector<double>& lambda_set) {
  DecompositionReport rep;
  rep.mu_value = mu(f);
  rep.lambdas = lambda_set;
  if (f.is_zero()) {
    rep.components.assign(1, 0.0);
    rep.homogeneity_residuals.assign(1, std::vector<double>(lambda_set.size(), 0.0));
    return rep;
  }
  const int n = f.dim();
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    rep.components.push_back(homogeneous_component(mu, k, f));
    sum += rep.components.back();
  }
  rep.sum_residual = std::abs(rep.mu_value - sum);
  rep.homogeneity_residuals.assign(static_cast<std::size_t>(n) + 1,
                                   std::vector<double>(lambda_set.size(), 0.0));
  for (std::size_t li = 0; li < lambda_set.size(); ++li) {
    const double lambda = lambda_set[li];
    const SimpleQCF flam = transform_qcf(f, lambda);
    for (int k = 0; k <= n; ++k) {
      const double lhs = homogeneous_component(mu, k, flam);
      const double rhs = std::pow(lambda, k) * rep.components[static_cast<std::size_t>(k)];
      rep.homogeneity_residuals[static_cast<std::size_t>(k)][li] = std::abs(lhs - rhs);
    }
  }
  return rep;
}

enum class RecoveryMode { kNHomogeneous, kZeroHomogeneous };

/// Samples the representing density of a homogeneous valuation:
/// N-homogeneous mode reads c(t) = mu(t I_{[0,1]^N}) (the unit cube has
/// V_N = 1); 0-homogeneous mode reads phi(t) = mu(t I_{point}). Returns a
/// piecewise-linear density through the grid samples with c(0) = 0.
inline Density recover_density(const ValuationOracle& mu, int n, RecoveryMode mode,
                               const std::vector<double>& t_grid) {
  if (n < 1) throw std::invalid_argument("recover_density: dimension must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("recover_density: empty grid");
  std::vector<double> grid = t_grid;
  std::sort(grid.begin(), grid.end());
  for (double t : grid)
    if (!(t > 0.0))
      throw std::invalid_argument("recover_density: grid must lie in (0, infinity)");
  const ConvexBody probe =
      (mode == RecoveryMode::kNHomogeneous)
          ? ConvexBody(unit_cube(n))
          : ConvexBody(Box::make(Vec::Zero(n), Vec::Zero(n)));
  std::vector<std::pair<double, double>> knots;
  knots.push_back({0.0, 0.0});
  for (double t : grid) {
    if (!knots.empty() && knots.back().first == t) continue;
    knots.push_back({t, mu(single_level(t, probe))});
  }
  return Density::pwl(std::move(knots));
}

struct KlainSample {
  double t = 0.0;
  Frame frame;
  double value = 0.0;
};

/// Kl_mu(t, E) for the k-subspace spanned by `frame`: mu(t I_Q) with Q the
/// unit k-cube embedded through the frame (Vol_k(Q) = 1). Translation
/// invariance makes the offset immaterial; pass one to exercise that.
inline KlainSample klain_eval(const ValuationOracle& mu, double t, const Frame& frame,
                              const Vec& offset = Vec()) {
  if (!(t > 0.0)) throw std::invalid_argument("klain_eval: t must be positive");
  if (!mu.flags.translation_invariant)
    throw std::invalid_argument("klain_eval: oracle must declare translation invariance");
  const int k = frame.size();
  if (!mu.flags.homogeneous_degree || *mu.flags.homogeneous_degree != k)
    throw std::invalid_argument(
        "klain_eval: frame size does not match the declared homogeneity degree");
  Vec off = offset.size() == 0 ? Vec(Vec::Zero(frame.ambient_dim())) : offset;
  const EmbeddedBody q = embed(unit_cube(k), frame, std::move(off));
  return KlainSample{t, frame, mu(single_level(t, ConvexBody(q)))};
}

struct KlainReport {
  std::vector<double> t_grid;
  std::vector<std::vector<double>> values;  // [t][frame]
  std::vector<double> spread_per_t;         // max - min across frames
  double max_reconstruction_deviation = 0.0;
  Density phi = Density::zero();
};

/// Builds phi from Klain samples along the first frame, then checks
/// mu(f) = ∫ phi dS_k(f;·) on embedded test stacks supported in each frame
/// and reports the cross-frame spread of the samples.
inline KlainReport klain_reconstruct_check(const ValuationOracle& mu,
                                           const std::vector<double>& t_grid,
                                           const std::vector<Frame>& frames) {
  if (frames.empty())
    throw std::invalid_argument("klain_reconstruct_check: no frames");
  if (!mu.flags.rotation_invariant)
    throw std::invalid_argument(
        "klain_reconstruct_check: oracle must declare rotation invariance");
  const int k = frames.front().size();
  for (const Frame& fr : frames)
    if (fr.size() != k)
      throw std::invalid_argument("klain_reconstruct_check: mixed frame sizes");

  KlainReport rep;
  rep.t_grid = t_grid;
  std::sort(rep.t_grid.begin(), rep.t_grid.end());
  rep.values.assign(rep.t_grid.size(), std::vector<double>(frames.size(), 0.0));
  rep.spread_per_t.assign(rep.t_grid.size(), 0.0);
  for (std::size_t ti = 0; ti < rep.t_grid.size(); ++ti) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
      const double v = klain_eval(mu, rep.t_grid[ti], frames[fi]).value;
      rep.values[ti][fi] = v;
      if (fi == 0) {
        lo = hi = v;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    rep.spread_per_t[ti] = hi - lo;
  }

  std::vector<std::pair<double, double>> knots;
  knots.push_back({0.0, 0.0});
  for (std::size_t ti = 0; ti < rep.t_grid.size(); ++ti)
    knots.push_back({rep.t_grid[ti], rep.values[ti][0]});
  rep.phi = Density::pwl(std::move(knots));

  // nested embedded test stacks with grid-aligned thresholds
  for (const Frame& fr : frames) {
    const Vec zero_off = Vec::Zero(fr.ambient_dim());
    std::vector<Level> levels;
    const std::size_t m = std::min<std::size_t>(3, rep.t_grid.size());
    for (std::size_t i = 0; i < m; ++i) {
      const double side = 1.4 - 0.4 * static_cast<double>(i);
      const Box inner = Box::make(Vec::Zero(k), Vec::Constant(k, side));
      levels.push_back(Level{rep.t_grid[i], ConvexBody(embed(inner, fr, zero_off))});
    }
    const SimpleQCF f = make_simple(std::move(levels));
    const double direct = mu(f);
    const double reconstructed = integrate(level_measure(f, k), rep.phi);
    rep.max_reconstruction_deviation =
        std::max(rep.max_reconstruction_deviation, std::abs(direct - reconstructed));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Grassmannian frame scans
// ---------------------------------------------------------------------------

/// All coordinate k-subspace frames of R^n, lexicographic.
inline std::vector<Frame> coordinate_frames(int n, int k) {
  std::vector<Frame> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<Vec> vs;
    for (int i : idx) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      vs.push_back(std::move(e));
    }
    out.push_back(Frame::make(std::move(vs)));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// Rotation by `angle` in the (axis_a, axis_b) coordinate plane.
inline Eigen::MatrixXd givens_rotation(int n, int axis_a, int axis_b, double angle) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  r(axis_a, axis_a) = std::cos(angle);
  r(axis_b, axis_b) = std::cos(angle);
  r(axis_a, axis_b) = -std::sin(angle);
  r(axis_b, axis_a) = std::sin(angle);
  return r;
}

/// Seeded random frame: Gaussian vectors, modified Gram-Schmidt, leading
/// sign fixed for reproducibility.
inline Frame random_frame(Rng& rng, int n, int k) {
  std::vector<Vec> vs;
  while (static_cast<int>(vs.size()) < k) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    for (const Vec& u : vs) v -= u.dot(v) * u;
    const double nrm = v.norm();
    if (nrm < 1e-6) continue;
    v /= nrm;
    for (int i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-12) {
        if (v[i] < 0) v = -v;
        break;
      }
    }
    vs.push_back(std::move(v));
  }
  return Frame::make(std::move(vs));
}

/// Deterministic Grassmannian scan list: coordinate subspaces, Givens
/// rotations of the first one at pi/6, pi/4, pi/3, then seeded random
/// frames until `count` is reached.
inline std::vector<Frame> standard_frames(int n, int k, int count, std::uint64_t seed) {
  std::vector<Frame> out = coordinate_frames(n, k);
  if (n >= 2) {
    for (double angle : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
      const Eigen::MatrixXd r = givens_rotation(n, 0, 1, angle);
      std::vector<Vec> vs;
      for (const Vec& v : out.front().vectors) vs.push_back(r * v);
      out.push_back(Frame::make(std::move(vs)));
    }
  }
  Rng rng(mix_seed(seed, 0xF7A3E5ULL));
  while (static_cast<int>(out.size()) < count) out.push_back(random_frame(rng, n, k));
  if (static_cast<int>(out.size()) > count) out.resize(static_cast<std::size_t>(count));
  return out;
}

}  // namespace qcval
