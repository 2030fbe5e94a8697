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

// Deterministic end-to-end check suite. Every tolerance is pinned here;
// identical config gives a byte-identical report (timings are reported
// separately and never enter the rows).

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qcval/analysis.hpp"
#include "qcval/generators.hpp"
#include "qcval/geometry.hpp"
#include "qcval/io.hpp"
#include "qcval/measures.hpp"
#include "qcval/qcf.hpp"
#include "qcval/steiner_mc.hpp"
#include "qcval/valuations.hpp"

namespace qcval {

struct ReportRow {
  std::string name;
  std::string expected;  // target value, or "n/a"
  double actual = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct AcceptanceConfig {
  std::uint64_t seed = 42;
  double tol = 1e-8;        // bound for the rows whose default is 1e-8
  long samples = 1000000;   // per-radius Monte-Carlo samples
  int threads = 0;          // 0 = hardware concurrency
};

struct AcceptanceResult {
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, double>> timings_sec;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

inline void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << "name,expected,actual,residual,pass\n";
  for (const auto& r : rows)
    os << r.name << "," << r.expected << "," << fmt17(r.actual) << ","
       << fmt17(r.residual) << "," << (r.pass ? 1 : 0) << "\n";
}

// Reference valuation trio used across the suite: a 2-homogeneous and a
// 1-homogeneous integral valuation with hinge densities, and a 0-homogeneous
// max-type valuation.
inline DensitySpec reference_spec_phi2() {
  return DensitySpec::make({Density::zero(), Density::zero(), Density::hinge(0.5)}, 0.25);
}
inline DensitySpec reference_spec_phi1() {
  return DensitySpec::make({Density::zero(), Density::hinge(0.5), Density::zero()}, 0.25);
}
inline Density reference_phi0() { return Density::poly({0.0, 0.0, 1.0}); }  // t^2
inline DensitySpec reference_spec_phi0() {
  return DensitySpec::make({reference_phi0(), Density::zero(), Density::zero()}, 0.25);
}

namespace detail_acceptance {

inline double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail_acceptance

/// Runs the full suite. Rows are emitted in a fixed order; all values are
/// deterministic functions of the config.
inline AcceptanceResult run_acceptance(const AcceptanceConfig& cfg) {
  using detail_acceptance::rel;
  AcceptanceResult res;
  const std::vector<DensitySpec> specs = {reference_spec_phi2(), reference_spec_phi1(),
                                          reference_spec_phi0()};
  const std::vector<std::string> spec_names = {"phi2", "phi1", "phi0max"};

  // --- 1: exact intrinsic volumes vs Monte-Carlo Steiner fit -------------
  {
    detail_acceptance::Stopwatch sw;
    Rng rng(mix_seed(cfg.seed, 0xC1));
    double worst_z = 0.0;
    std::vector<double> radii = {0.25, 0.4, 0.55, 0.7, 0.85, 1.0};
    for (int i = 0; i < 20; ++i) {
      const int n = (i % 3) + 1;
      ConvexBody body = (i < 10)
                            ? ConvexBody(random_box(rng, n))
                            : ConvexBody(random_zonotope(rng, n, n + 1 + (i % 2)));
      const std::vector<double> exact = intrinsic_volumes(body);
      const McVolumes mc = steiner_mc_volumes(body, radii, cfg.samples,
                                              mix_seed(cfg.seed, 0xC1000 + i),
                                              cfg.threads);
      for (int k = 0; k <= n; ++k) {
        const double se = mc.std_errors[static_cast<std::size_t>(k)];
        const double z =
            std::abs(mc.values[static_cast<std::size_t>(k)] - exact[static_cast<std::size_t>(k)]) /
            (se > 0 ? se : 1e-300);
        worst_z = std::max(worst_z, z);
      }
    }
    res.rows.push_back({"mc_oracle_agreement", "<=3", worst_z, worst_z, worst_z <= 3.0});
    res.timings_sec.push_back({"mc_oracle_agreement", sw.seconds()});
  }

  // --- 2: valuation axiom on generated compatible pairs ------------------
  {
    detail_acceptance::Stopwatch sw;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const ValuationOracle mu = make_integral_oracle(specs[s]);
      Rng rng(mix_seed(cfg.seed, 0xA2 + s));
      double worst = 0.0;
      for (int i = 0; i < 500; ++i) {
        const auto [f, g] = random_compatible_pair(rng, 2);
        const double scale = 1.0 + std::abs(mu(f)) + std::abs(mu(g));
        worst = std::max(worst, check_valuation_identity(mu, f, g) / scale);
      }
      res.rows.push_back({"axiom_suite_" + spec_names[s], "0", worst, worst,
                          worst <= cfg.tol});
    }
    res.timings_sec.push_back({"axiom_suite", sw.seconds()});
  }

  // --- 3: closed form on single-level functions --------------------------
  for (std::size_t s = 0; s < specs.size(); ++s) {
    Rng rng(mix_seed(cfg.seed, 0xB3 + s));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double t = rng.uniform(0.3, 4.0);
      const Box k = random_box(rng, 2);
      const double direct = eval_integral(specs[s], single_level(t, ConvexBody(k)));
      const std::vector<double> vols = box_intrinsic_volumes(k);
      double closed = 0.0;
      for (int d = 0; d <= 2; ++d)
        closed += specs[s].phis[static_cast<std::size_t>(d)](t) * vols[static_cast<std::size_t>(d)];
      worst = std::max(worst, std::abs(direct - closed) /
                                  std::max(1e-300, std::abs(closed)));
    }
    res.rows.push_back({"closed_form_" + spec_names[s], "0", worst, worst,
                        worst <= 1e-12});
  }

  // --- 4: distributional derivative identity -----------------------------
  {
    Rng rng(mix_seed(cfg.seed, 0xD4));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const SimpleQCF f = random_box_stack(rng, 2);
      const int k = rng.uniform_int(0, 2);
      // piecewise-linear bump with knots straddling the thresholds
      const double m = f.max_value();
      const double a = rng.uniform(0.01, 0.2);
      const double b = m + rng.uniform(0.2, 1.0);
      const double mid = a + rng.uniform(0.3, 0.7) * (b - a);
      const Density psi =
          Density::pwl({{a, 0.0}, {mid, rng.uniform(0.5, 2.0)}, {b, 0.0}});
      double min_gap = m;
      const auto& lv = f.levels();
      for (std::size_t j = 0; j + 1 < lv.size(); ++j)
        min_gap = std::min(min_gap, lv[j + 1].t - lv[j].t);
      worst = std::max(worst, distributional_check(f, k, psi, min_gap / 20.0));
    }
    res.rows.push_back({"distributional_identity", "0", worst, worst, worst <= cfg.tol});
  }

  // --- 5: homogeneous decomposition of a mixed valuation -----------------
  {
    const ValuationOracle mixed = oracle_sum(
        oracle_sum(make_max_type_oracle(reference_phi0()),
                   make_integral_oracle(reference_spec_phi1())),
        make_integral_oracle(reference_spec_phi2()));
    const std::vector<ValuationOracle> parts = {
        make_max_type_oracle(reference_phi0()),
        make_integral_oracle(reference_spec_phi1()),
        make_integral_oracle(reference_spec_phi2())};
    const std::vector<double> lambdas = {0.5, 3.0, 7.25};
    Rng rng(mix_seed(cfg.seed, 0xE5));
    double worst_sum = 0.0, worst_hom = 0.0, worst_match = 0.0;
    for (int i = 0; i < 50; ++i) {
      const SimpleQCF f = random_box_stack(rng, 2);
      const DecompositionReport rep = verify_decomposition(mixed, f, lambdas);
      worst_sum = std::max(worst_sum, rep.sum_residual / (1.0 + std::abs(rep.mu_value)));
      for (std::size_t k = 0; k < rep.components.size(); ++k)
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
          const double ref = std::pow(lambdas[li], static_cast<double>(k)) *
                             rep.components[k];
          worst_hom = std::max(worst_hom,
                               rep.homogeneity_residuals[k][li] / (1.0 + std::abs(ref)));
        }
      for (int k = 0; k <= 2; ++k)
        worst_match = std::max(
            worst_match,
            rel(rep.components[static_cast<std::size_t>(k)], parts[static_cast<std::size_t>(k)](f)));
    }
    res.rows.push_back({"decomposition_sum", "0", worst_sum, worst_sum, worst_sum <= 1e-10});
    res.rows.push_back({"decomposition_homogeneity", "0", worst_hom, worst_hom,
                        worst_hom <= cfg.tol});
    res.rows.push_back({"decomposition_components", "0", worst_match, worst_match,
                        worst_match <= cfg.tol});
  }

  // --- 6: density recovery round-trip ------------------------------------
  {
    const std::vector<double> grid = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
    const ValuationOracle mu = make_integral_oracle(reference_spec_phi2());
    const Density c = recover_density(mu, 2, RecoveryMode::kNHomogeneous, grid);
    const Density hinge = Density::hinge(0.5);
    double worst_grid = 0.0;
    for (double t : grid) worst_grid = std::max(worst_grid, std::abs(c(t) - hinge(t)));
    res.rows.push_back({"recovery_grid", "0", worst_grid, worst_grid, worst_grid <= 1e-10});

    const DensitySpec roundtrip =
        DensitySpec::make({Density::zero(), Density::zero(), c}, 0.25);
    Rng rng(mix_seed(cfg.seed, 0xF6));
    double worst_rt = 0.0;
    for (int i = 0; i < 20; ++i) {
      const int m = rng.uniform_int(1, 3);
      std::vector<int> picks;
      while (static_cast<int>(picks.size()) < m) {
        const int p = rng.uniform_int(0, static_cast<int>(grid.size()) - 1);
        bool dup = false;
        for (int q : picks) dup = dup || q == p;
        if (!dup) picks.push_back(p);
      }
      std::sort(picks.begin(), picks.end());
      std::vector<Level> levels;
      Box cur = random_box(rng, 2);
      for (int j = 0; j < m; ++j) {
        levels.push_back(Level{grid[static_cast<std::size_t>(picks[static_cast<std::size_t>(j)])],
                               ConvexBody(cur)});
        cur = shrink_box(rng, cur);
      }
      const SimpleQCF f = make_simple(std::move(levels));
      worst_rt = std::max(worst_rt, rel(eval_integral(roundtrip, f), mu(f)));
    }
    res.rows.push_back({"recovery_roundtrip", "0", worst_rt, worst_rt, worst_rt <= cfg.tol});
  }

  // --- 7: cone approximant convergence ------------------------------------
  {
    const DensitySpec spec =
        DensitySpec::make({Density::zero(), Density::zero(), Density::hinge(0.25)}, 0.25);
    const QCFOracle cone = cone_oracle(ConvexBody(unit_cube(2)));
    const double target = 9.0 / 64.0;
    std::vector<double> vals;
    for (int i = 1; i <= 7; ++i)
      vals.push_back(eval_integral(spec, dyadic_approx(cone, i)));
    double min_step = vals.front();
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
      min_step = std::min(min_step, vals[i + 1] - vals[i]);
    const double err = std::abs(vals.back() - target);
    res.rows.push_back({"cone_convergence", fmt17(target), vals.back(), err, err <= 0.01});
    res.rows.push_back({"cone_monotonicity", ">=0", min_step, std::max(0.0, -min_step),
                        min_step >= -1e-15});
  }

  // --- 8: Klain scan, reconstruction, separation --------------------------
  {
    const std::vector<double> grid = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
    const std::vector<Frame> frames = standard_frames(2, 1, 8, cfg.seed);
    const ValuationOracle mu = make_integral_oracle(reference_spec_phi1());
    const KlainReport rep = klain_reconstruct_check(mu, grid, frames);
    double spread = 0.0;
    for (double s : rep.spread_per_t) spread = std::max(spread, s);
    const Density hinge = Density::hinge(0.5);
    double match = 0.0;
    for (std::size_t ti = 0; ti < rep.t_grid.size(); ++ti)
      for (double v : rep.values[ti])
        match = std::max(match, std::abs(v - hinge(rep.t_grid[ti])));
    res.rows.push_back({"klain_spread", "0", spread, spread, spread <= 1e-9});
    res.rows.push_back({"klain_density_match", "0", match, match, match <= 1e-9});
    res.rows.push_back({"klain_reconstruction", "0", rep.max_reconstruction_deviation,
                        rep.max_reconstruction_deviation,
                        rep.max_reconstruction_deviation <= cfg.tol});

    const DensitySpec specB =
        DensitySpec::make({Density::zero(), Density::hinge(1.0), Density::zero()}, 0.25);
    const ValuationOracle muB = make_integral_oracle(specB);
    const double va = klain_eval(mu, 1.5, frames.front()).value;
    const double vb = klain_eval(muB, 1.5, frames.front()).value;
    const double sep = std::abs(va - vb);
    res.rows.push_back({"klain_separation", ">=0.49", sep, sep, sep >= 0.49});
  }

  // --- 9: continuity along shrinking boxes --------------------------------
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const ValuationOracle mu = make_integral_oracle(specs[s]);
    const double limit = mu(single_level(1.0, ConvexBody(unit_cube(2))));
    std::vector<double> gaps;
    double worst_dir = 0.0;
    double prev = 0.0;
    for (int j = 1; j <= 12; ++j) {
      const double eps = std::ldexp(1.0, -j);
      const Box kj = Box::make(Vec::Constant(2, -eps), Vec::Constant(2, 1.0 + eps));
      const double v = mu(single_level(1.0, ConvexBody(kj)));
      if (j > 1) worst_dir = std::max(worst_dir, v - prev);  // must not increase
      prev = v;
      gaps.push_back(std::abs(v - limit));
    }
    for (std::size_t j = 0; j + 1 < gaps.size(); ++j)
      worst_dir = std::max(worst_dir, gaps[j + 1] - gaps[j]);
    const double gap12 = gaps.back();
    const bool pass = gap12 <= 1e-3 && worst_dir <= 1e-15;
    res.rows.push_back({"continuity_" + spec_names[s], "0", gap12,
                        std::max(gap12, worst_dir), pass});
  }

  return res;
}

}  // namespace qcval
