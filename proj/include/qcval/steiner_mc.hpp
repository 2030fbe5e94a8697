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

// Monte-Carlo intrinsic-volume oracle: estimates Vol(K + rB) by rejection
// sampling for a stratified set of radii and fits the Steiner polynomial
//   Vol(K + rB) = sum_k kappa_{N-k} V_k(K) r^{N-k}
// by linear least squares. Deliberately independent of the exact intrinsic
// volume formulas so the two routes can check each other.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

#include "qcval/distance.hpp"
#include "qcval/geometry.hpp"
#include "qcval/rng.hpp"

namespace qcval {

struct McVolumes {
  std::vector<double> values;      // estimated V_0..V_N
  std::vector<double> std_errors;  // propagated per-coefficient errors
};

namespace detail {

// One stratum: a fixed number of points for one radius, drawn from a
// dedicated counter-derived stream. Counts are integers, so merging block
// results is order-independent and the output cannot depend on the degree
// of parallelism.
inline long count_hits_block(const BodyDistance& dist, const Box& sample_box,
                             double radius, std::uint64_t stream,
                             std::uint64_t block_idx, long block_len) {
  std::mt19937_64 eng(mix_seed(stream, block_idx));
  const int n = dist.dim();
  Vec x(n);
  long hits = 0;
  for (long s = 0; s < block_len; ++s) {
    for (int i = 0; i < n; ++i)
      x[i] = sample_box.lo[i] +
             bits_to_unit(eng()) * (sample_box.hi[i] - sample_box.lo[i]);
    if (dist.within(x, radius)) ++hits;
  }
  return hits;
}

}  // namespace detail

/// Estimates (V_0..V_N) of `body` with per-coefficient standard errors.
/// `samples` is the per-radius sample count; each radius gets an
/// independent stream so the fitted coefficients have a clean covariance.
/// Deterministic given `seed`, bitwise independent of `threads`.
inline McVolumes steiner_mc_volumes(const ConvexBody& body,
                                    std::vector<double> radii, long samples,
                                    std::uint64_t seed, int threads = 0) {
  const int n = ambient_dim(body);
  if (static_cast<int>(radii.size()) < n + 1)
    throw std::invalid_argument("steiner_mc_volumes: need at least N+1 radii");
  if (samples < 10000)
    throw std::invalid_argument("steiner_mc_volumes: samples < 10^4");
  std::sort(radii.begin(), radii.end());
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (radii[i] == radii[i + 1])
      throw std::invalid_argument("steiner_mc_volumes: radii must be distinct");
  if (radii.front() <= 0.0)
    throw std::invalid_argument("steiner_mc_volumes: radii must be positive");

  const double r_max = radii.back();
  Box bb = bounding_box(body);
  const Box sample_box{Vec(bb.lo.array() - r_max), Vec(bb.hi.array() + r_max)};
  const double box_vol = sample_box.volume();
  const BodyDistance dist(body);

  // blocks of fixed length, assigned round-robin to a small async pool
  constexpr long kBlock = 1 << 16;
  struct Task {
    std::size_t radius_idx;
    std::uint64_t block_idx;
    long len;
  };
  std::vector<Task> tasks;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    long left = samples;
    std::uint64_t blk = 0;
    while (left > 0) {
      const long len = std::min(left, kBlock);
      tasks.push_back({ri, blk++, len});
      left -= len;
    }
  }
  std::vector<long> hits(radii.size(), 0);
  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::max(
                                   1u, std::thread::hardware_concurrency()));
  nthreads = std::min<int>(nthreads, static_cast<int>(tasks.size()));
  std::vector<std::future<std::vector<long>>> futs;
  for (int t = 0; t < nthreads; ++t) {
    futs.push_back(std::async(std::launch::async, [&, t]() {
      std::vector<long> local(radii.size(), 0);
      for (std::size_t k = t; k < tasks.size(); k += nthreads) {
        const Task& task = tasks[k];
        const std::uint64_t stream =
            mix_seed(seed, 0xA11CE5ULL ^ (task.radius_idx * 0x9E3779B9ULL));
        local[task.radius_idx] += detail::count_hits_block(
            dist, sample_box, radii[task.radius_idx], stream, task.block_idx,
            task.len);
      }
      return local;
    }));
  }
  for (auto& f : futs) {
    const std::vector<long> local = f.get();
    for (std::size_t i = 0; i < hits.size(); ++i) hits[i] += local[i];
  }

  const std::size_t nr = radii.size();
  Eigen::VectorXd vol(nr), se(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const double p = static_cast<double>(hits[i]) / samples;
    vol[i] = p * box_vol;
    // Agresti-style shrinkage keeps the error finite at p in {0,1}
    const double pt = (hits[i] + 1.0) / (samples + 2.0);
    se[i] = box_vol * std::sqrt(pt * (1.0 - pt) / samples);
  }

  Eigen::MatrixXd a(nr, n + 1);
  for (std::size_t i = 0; i < nr; ++i)
    for (int k = 0; k <= n; ++k)
      a(i, k) = unit_ball_volume(n - k) * std::pow(radii[i], n - k);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < n + 1)
    throw std::invalid_argument("steiner_mc_volumes: radii ill-conditioned");
  const Eigen::VectorXd coef = qr.solve(vol);

  // covariance of the fit: (A^T A)^-1 A^T D A (A^T A)^-1 with independent
  // per-radius variances D
  const Eigen::MatrixXd ata_inv = (a.transpose() * a).inverse();
  const Eigen::MatrixXd h = ata_inv * a.transpose();
  Eigen::MatrixXd cov = h * se.array().square().matrix().asDiagonal() * h.transpose();

  McVolumes out;
  out.values.assign(coef.data(), coef.data() + n + 1);
  out.std_errors.resize(n + 1);
  for (int k = 0; k <= n; ++k)
    out.std_errors[k] = std::sqrt(std::max(0.0, cov(k, k)));
  return out;
}

}  // namespace qcval
