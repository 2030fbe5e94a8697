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

#include <catch2/catch_amalgamated.hpp>

#include "qcval/qcval.hpp"
#include "testutil.hpp"

using namespace qcval;
using Catch::Approx;

namespace {
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
}  // namespace

TEST_CASE("make_simple validates and canonicalizes", "[qcf]") {
  const ConvexBody outer = ConvexBody(make_box({0, 0}, {2, 2}));
  const ConvexBody inner = ConvexBody(make_box({0, 0}, {1, 1}));

  const SimpleQCF single = make_simple({Level{1.0, outer}});
  CHECK(single.size() == 1);
  CHECK(single.max_value() == 1.0);

  const SimpleQCF two = make_simple({Level{1.0, outer}, Level{2.0, inner}});
  CHECK(two.size() == 2);

  // nestedness violated
  CHECK_THROWS_AS(make_simple({Level{1.0, inner}, Level{2.0, outer}}),
                  std::invalid_argument);
  // non-positive threshold
  CHECK_THROWS_AS(make_simple({Level{0.0, outer}}), std::invalid_argument);
  CHECK_THROWS_AS(make_simple({Level{-1.0, outer}}), std::invalid_argument);
  // duplicate thresholds with distinct bodies
  CHECK_THROWS_AS(make_simple({Level{1.0, outer}, Level{1.0, inner}}),
                  std::invalid_argument);
  // duplicate thresholds with the same body merge silently
  CHECK(make_simple({Level{1.0, outer}, Level{1.0, outer}}).size() == 1);
  // equal consecutive bodies collapse onto the higher threshold
  const SimpleQCF merged = make_simple({Level{1.0, outer}, Level{2.0, outer}});
  CHECK(merged.size() == 1);
  CHECK(merged.levels().front().t == 2.0);
  // input order does not matter
  const SimpleQCF swapped = make_simple({Level{2.0, inner}, Level{1.0, outer}});
  CHECK(swapped.size() == 2);
  CHECK(swapped.levels().front().t == 1.0);
}

TEST_CASE("evaluate matches the stack definition", "[qcf]") {
  const SimpleQCF f = make_simple({Level{1.0, ConvexBody(make_box({0, 0}, {2, 2}))},
                                   Level{2.0, ConvexBody(make_box({0, 0}, {1, 1}))}});
  CHECK(evaluate(f, v2(0.5, 0.5)) == 2.0);
  CHECK(evaluate(f, v2(1.5, 1.5)) == 1.0);
  CHECK(evaluate(f, v2(5, 5)) == 0.0);
  CHECK(evaluate(SimpleQCF{}, v2(0, 0)) == 0.0);
}

TEST_CASE("level sets are right-closed", "[qcf]") {
  const ConvexBody k1 = ConvexBody(make_box({0, 0}, {2, 2}));
  const ConvexBody k2 = ConvexBody(make_box({0, 0}, {1, 1}));
  const SimpleQCF f = make_simple({Level{1.0, k1}, Level{2.0, k2}});

  auto at = [&](double t) { return level_set(f, t); };
  REQUIRE(at(1.5).has_value());
  CHECK(body_equal(*at(1.5), k2));
  REQUIRE(at(1.0).has_value());
  CHECK(body_equal(*at(1.0), k1));  // boundary t = t_i belongs to K_i
  CHECK_FALSE(at(2.5).has_value());
  CHECK_THROWS_AS(level_set(f, 0.0), std::invalid_argument);
}

TEST_CASE("level-set / evaluate consistency on random stacks", "[qcf]") {
  Rng rng(100);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const SimpleQCF f = random_box_stack(rng, n);
    const Box window = bounding_box(f.levels().front().body);
    for (int i = 0; i < 100; ++i) {
      Vec x(n);
      for (int d = 0; d < n; ++d)
        x[d] = rng.uniform(window.lo[d] - 0.5, window.hi[d] + 0.5);
      const double t = rng.uniform(0.05, f.max_value() + 0.5);
      const auto ls = level_set(f, t);
      const bool member = ls && body_contains_point(*ls, x);
      CHECK((evaluate(f, x) >= t) == member);
    }
  }
}

TEST_CASE("upper semicontinuity surrogate at and off thresholds", "[qcf]") {
  const ConvexBody k1 = ConvexBody(make_box({0, 0}, {2, 2}));
  const ConvexBody k2 = ConvexBody(make_box({0, 0}, {1, 1}));
  const SimpleQCF f = make_simple({Level{1.0, k1}, Level{2.0, k2}});
  // off-threshold: the level set stabilizes as eps decreases
  for (double eps : {1e-3, 1e-6, 1e-9})
    CHECK(body_equal(*level_set(f, 1.5 - eps), *level_set(f, 1.5)));
  // at a threshold the right-closed convention is exact
  CHECK(body_equal(*level_set(f, 1.0), k1));
  CHECK(body_equal(*level_set(f, 1.0 + 1e-9), k2));
}

TEST_CASE("lattice_min intersects level sets", "[qcf]") {
  const SimpleQCF f = single_level(1.0, ConvexBody(make_box({0, 0}, {2, 2})));
  const SimpleQCF g = single_level(1.0, ConvexBody(make_box({1, 0}, {3, 2})));
  const SimpleQCF m = lattice_min(f, g);
  REQUIRE(m.size() == 1);
  CHECK(body_equal(m.levels().front().body, ConvexBody(make_box({1, 0}, {2, 2}))));
  CHECK(testing::grid_mismatch(m, f, g, false, make_box({-1, -1}, {4, 3})) == 0.0);

  // idempotence
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const SimpleQCF h = random_box_stack(rng, 2);
    const SimpleQCF mm = lattice_min(h, h);
    REQUIRE(mm.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
      CHECK(body_equal(mm.levels()[i].body, h.levels()[i].body));
  }

  // disjoint supports give the zero function
  const SimpleQCF far = single_level(1.0, ConvexBody(make_box({10, 10}, {11, 11})));
  CHECK(lattice_min(f, far).is_zero());
}

TEST_CASE("lattice_max unions level sets or reports non-quasi-concavity",
          "[qcf]") {
  const SimpleQCF f = single_level(1.0, ConvexBody(make_box({0, 0}, {2, 2})));
  const SimpleQCF g = single_level(1.0, ConvexBody(make_box({1, 0}, {3, 2})));
  const SimpleQCF m = lattice_max(f, g);
  REQUIRE(m.size() == 1);
  CHECK(body_equal(m.levels().front().body, ConvexBody(make_box({0, 0}, {3, 2}))));
  CHECK(testing::grid_mismatch(m, f, g, true, make_box({-1, -1}, {4, 3})) == 0.0);

  const SimpleQCF bad = single_level(1.0, ConvexBody(make_box({1, 0}, {3, 1})));
  CHECK_THROWS_AS(lattice_max(f, bad), NotQuasiConcave);
  try {
    lattice_max(f, bad);
  } catch (const NotQuasiConcave& e) {
    CHECK(e.threshold == 1.0);
  }

  const SimpleQCF mm = lattice_max(f, f);
  REQUIRE(mm.size() == 1);
  CHECK(body_equal(mm.levels().front().body, f.levels().front().body));

  // zero function is neutral
  CHECK(lattice_max(f, SimpleQCF{}).size() == 1);
}

TEST_CASE("lattice identities hold at every merged threshold", "[qcf]") {
  Rng rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [f, g] = random_compatible_pair(rng, 2);
    SimpleQCF vee;
    REQUIRE_NOTHROW(vee = lattice_max(f, g));
    const SimpleQCF wedge = lattice_min(f, g);
    std::vector<double> grid;
    for (const Level& lv : f.levels()) grid.push_back(lv.t);
    for (const Level& lv : g.levels()) grid.push_back(lv.t);
    for (double t : grid) {
      const auto lf = level_set(f, t), lg = level_set(g, t);
      const auto lv = level_set(vee, t), lw = level_set(wedge, t);
      // union
      if (lf && lg) {
        const auto uni = box_union_if_convex(std::get<Box>(*lf), std::get<Box>(*lg));
        REQUIRE(uni.has_value());
        REQUIRE(lv.has_value());
        CHECK(body_equal(*lv, ConvexBody(*uni)));
        const auto inter = box_intersect(std::get<Box>(*lf), std::get<Box>(*lg));
        if (inter)
          CHECK(body_equal(*lw, ConvexBody(*inter)));
        else
          CHECK_FALSE(lw.has_value());
      } else if (lf || lg) {
        REQUIRE(lv.has_value());
        CHECK(body_equal(*lv, lf ? *lf : *lg));
        CHECK_FALSE(lw.has_value());
      }
    }
  }
}

TEST_CASE("transform_qcf scales level sets and keeps thresholds", "[qcf]") {
  const SimpleQCF f = single_level(1.0, ConvexBody(make_box({0, 0}, {1, 1})));
  const SimpleQCF doubled = transform_qcf(f, 2.0);
  CHECK(doubled.max_value() == 1.0);
  CHECK(body_equal(doubled.levels().front().body,
                   ConvexBody(make_box({0, 0}, {2, 2}))));

  const SimpleQCF moved = transform_qcf(f, 1.0, v2(3, 0), false);
  CHECK(intrinsic_volumes(moved.levels().front().body) ==
        intrinsic_volumes(f.levels().front().body));

  // reflecting an origin-symmetric zonotope stack is the identity
  const Zonotope sym = Zonotope::make(v2(-0.5, -0.5), {v2(1, 0), v2(0, 1)});
  const SimpleQCF zf = single_level(2.0, ConvexBody(sym));
  const SimpleQCF zr = transform_qcf(zf, 1.0, Vec(), true);
  for (const Vec& u : sphere_directions(2, 64))
    CHECK(support_value(zr.levels().front().body, u) ==
          Approx(support_value(zf.levels().front().body, u)).margin(1e-12));
}

TEST_CASE("transform round-trip lambda then 1/lambda is the identity", "[qcf]") {
  Rng rng(303);
  for (int trial = 0; trial < 20; ++trial) {
    const SimpleQCF f = random_box_stack(rng, rng.uniform_int(1, 3));
    const double lambda = rng.uniform(0.2, 5.0);
    const SimpleQCF back = transform_qcf(transform_qcf(f, lambda), 1.0 / lambda);
    REQUIRE(back.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(back.levels()[i].t == f.levels()[i].t);
      const Box& a = std::get<Box>(back.levels()[i].body);
      const Box& b = std::get<Box>(f.levels()[i].body);
      CHECK((a.lo - b.lo).lpNorm<Eigen::Infinity>() < 1e-12);
      CHECK((a.hi - b.hi).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
}

TEST_CASE("dyadic approximation of the cone oracle", "[qcf]") {
  const QCFOracle cone = cone_oracle(ConvexBody(make_box({0, 0}, {1, 1})));
  const SimpleQCF f1 = dyadic_approx(cone, 1);
  REQUIRE(f1.size() == 2);
  CHECK(f1.levels()[0].t == 0.5);
  CHECK(body_equal(f1.levels()[0].body, ConvexBody(make_box({0, 0}, {0.5, 0.5}))));
  CHECK(f1.levels()[1].t == 1.0);
  CHECK(body_equal(f1.levels()[1].body, ConvexBody(make_box({0, 0}, {0, 0}))));

  // constant-level oracle canonicalizes to a single level
  const QCFOracle plateau{1.0, [](double t) -> std::optional<ConvexBody> {
                            if (t > 1.0) return std::nullopt;
                            return ConvexBody(make_box({0, 0}, {1, 1}));
                          }};
  CHECK(dyadic_approx(plateau, 3).size() == 1);

  CHECK_THROWS_AS(dyadic_approx(cone, 0), std::invalid_argument);

  // oracle violating antitonicity on the grid is rejected
  const QCFOracle growing{1.0, [](double t) -> std::optional<ConvexBody> {
                            if (t > 1.0) return std::nullopt;
                            return ConvexBody(
                                Box::make(Vec::Zero(2), Vec::Constant(2, t)));
                          }};
  CHECK_THROWS_AS(dyadic_approx(growing, 2), std::invalid_argument);
}

TEST_CASE("dyadic approximants stay below the oracle and converge", "[qcf]") {
  const ConvexBody base = ConvexBody(make_box({0, 0}, {1, 1}));
  const QCFOracle cone = cone_oracle(base);
  auto cone_value = [&](const Vec& x) {
    // f(x) = sup{t : x in (1-t)[0,1]^2}; on the diagonal segment this is
    // 1 - max coordinate when coordinates are nonnegative
    const double m = std::max(x[0], x[1]);
    if (x[0] < 0 || x[1] < 0 || m > 1) return 0.0;
    return 1.0 - m;
  };
  Rng rng(404);
  for (int depth : {1, 3, 5}) {
    const SimpleQCF f = dyadic_approx(cone, depth);
    double worst_gap = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec x = v2(rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2));
      const double approx = evaluate(f, x);
      const double exact = cone_value(x);
      CHECK(approx <= exact + 1e-12);
      worst_gap = std::max(worst_gap, exact - approx);
    }
    CHECK(worst_gap <= cone.max_value / std::pow(2.0, depth) + 1e-12);
  }
  // pointwise monotone in depth on dyadic-compatible grids
  const SimpleQCF f2 = dyadic_approx(cone, 2);
  const SimpleQCF f4 = dyadic_approx(cone, 4);
  for (int i = 0; i < 100; ++i) {
    const Vec x = v2(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
    CHECK(evaluate(f2, x) <= evaluate(f4, x) + 1e-12);
  }
}

TEST_CASE("zonotope stacks evaluate through the distance solver", "[qcf]") {
  const Zonotope z = Zonotope::make(v2(0, 0), {v2(1, 0), v2(0, 1)});
  const SimpleQCF f = single_level(1.5, ConvexBody(z));
  CHECK(evaluate(f, v2(0.5, 0.5)) == 1.5);
  CHECK(evaluate(f, v2(1.5, 0.5)) == 0.0);
}
