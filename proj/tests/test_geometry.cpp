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

TEST_CASE("box intrinsic volumes are elementary symmetric polynomials",
          "[geometry]") {
  CHECK(box_intrinsic_volumes(make_box({0, 0}, {1, 1})) ==
        std::vector<double>{1.0, 2.0, 1.0});
  CHECK(box_intrinsic_volumes(make_box({0, 0}, {1, 0})) ==
        std::vector<double>{1.0, 1.0, 0.0});
  CHECK(box_intrinsic_volumes(make_box({0, 0}, {2, 2})) ==
        std::vector<double>{1.0, 4.0, 4.0});
}

TEST_CASE("zonotope intrinsic volumes via Gram determinants", "[geometry]") {
  const Zonotope square =
      Zonotope::make(Vec::Zero(2), {Vec::Unit(2, 0), Vec::Unit(2, 1)});
  CHECK(zonotope_intrinsic_volume(square, 1) == Approx(2.0).margin(1e-12));
  const Zonotope cube = Zonotope::make(
      Vec::Zero(3), {Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)});
  CHECK(zonotope_intrinsic_volume(cube, 2) == Approx(3.0).margin(1e-12));
  const Zonotope point = Zonotope::make(Vec::Zero(2), {});
  CHECK(zonotope_intrinsic_volume(point, 0) == 1.0);
  CHECK(zonotope_intrinsic_volume(point, 2) == 0.0);
  CHECK_THROWS_AS(zonotope_intrinsic_volume(point, 3), std::out_of_range);
  CHECK_THROWS_AS(zonotope_intrinsic_volume(point, -1), std::out_of_range);
}

TEST_CASE("boxes expressed as zonotopes agree on every degree", "[geometry]") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const Box b = random_box(rng, n);
    const Zonotope z = box_as_zonotope(b);
    const std::vector<double> vb = box_intrinsic_volumes(b);
    for (int k = 0; k <= n; ++k)
      CHECK(zonotope_intrinsic_volume(z, k) ==
            Approx(vb[static_cast<std::size_t>(k)])
                .epsilon(1e-9)
                .margin(1e-9));
  }
}

TEST_CASE("intrinsic volume homogeneity and rigid-motion invariance",
          "[geometry]") {
  Rng rng(77);
  for (double lambda : {0.5, 2.0, 3.7}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = rng.uniform_int(1, 3);
      const ConvexBody body = (trial % 2) ? ConvexBody(random_box(rng, n))
                                          : ConvexBody(random_zonotope(rng, n, n + 1));
      const std::vector<double> v = intrinsic_volumes(body);
      const std::vector<double> vs = intrinsic_volumes(transform_body(body, lambda));
      for (int k = 0; k <= n; ++k) {
        const double want = std::pow(lambda, k) * v[static_cast<std::size_t>(k)];
        CHECK(std::abs(vs[static_cast<std::size_t>(k)] - want) <=
              1e-9 * std::max(1.0, std::abs(want)));
      }
      Vec shift(n);
      for (int i = 0; i < n; ++i) shift[i] = rng.uniform(-5.0, 5.0);
      const std::vector<double> vt =
          intrinsic_volumes(transform_body(body, 1.0, shift, false));
      const std::vector<double> vr =
          intrinsic_volumes(transform_body(body, 1.0, Vec(), true));
      for (int k = 0; k <= n; ++k) {
        CHECK(vt[static_cast<std::size_t>(k)] ==
              Approx(v[static_cast<std::size_t>(k)]).epsilon(1e-9).margin(1e-9));
        CHECK(vr[static_cast<std::size_t>(k)] ==
              Approx(v[static_cast<std::size_t>(k)]).epsilon(1e-9).margin(1e-9));
      }
    }
  }
}

TEST_CASE("zonotope volumes survive orthonormal frame changes", "[geometry]") {
  Rng rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(2, 3);
    const Zonotope z = random_zonotope(rng, n, n + 2);
    const Eigen::MatrixXd r = random_frame(rng, n, n).matrix();
    const std::vector<double> before = intrinsic_volumes(ConvexBody(z));
    const std::vector<double> after =
        intrinsic_volumes(rotate_body(ConvexBody(z), r));
    for (int k = 0; k <= n; ++k)
      CHECK(after[static_cast<std::size_t>(k)] ==
            Approx(before[static_cast<std::size_t>(k)]).epsilon(1e-9).margin(1e-9));
  }
}

TEST_CASE("intrinsic volumes are monotone under box inclusion", "[geometry]") {
  Rng rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const Box outer = random_box(rng, n);
    const Box inner = shrink_box(rng, outer);
    const std::vector<double> vo = box_intrinsic_volumes(outer);
    const std::vector<double> vi = box_intrinsic_volumes(inner);
    for (int k = 0; k <= n; ++k)
      CHECK(vi[static_cast<std::size_t>(k)] <=
            vo[static_cast<std::size_t>(k)] + 1e-12);
  }
}

TEST_CASE("support values match corner enumeration", "[geometry]") {
  const Box sq = make_box({0, 0}, {1, 1});
  Vec u(2);
  u << 1, 0;
  CHECK(support_value(ConvexBody(sq), u) == 1.0);
  u << 1, 1;
  CHECK(support_value(ConvexBody(sq), u) == 2.0);
  const Zonotope z =
      Zonotope::make(Vec::Zero(2), {Vec::Unit(2, 0), Vec::Unit(2, 1)});
  u << -1, 0;
  CHECK(support_value(ConvexBody(z), u) == 0.0);
  CHECK_THROWS_AS(support_value(ConvexBody(sq), Vec(Vec::Zero(2))), std::invalid_argument);

  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const Box b = random_box(rng, n);
    Vec dir(n);
    for (int i = 0; i < n; ++i) dir[i] = rng.uniform(-1.0, 1.0);
    if (dir.norm() == 0.0) continue;
    CHECK(support_value(ConvexBody(b), dir) ==
          Approx(testing::corner_support(b, dir)).margin(1e-12));
  }
}

TEST_CASE("support function is Minkowski additive on zonotopes", "[geometry]") {
  Rng rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const Zonotope a = random_zonotope(rng, n, n + 1);
    const Zonotope b = random_zonotope(rng, n, n);
    const Zonotope sum = minkowski_sum(a, b);
    for (const Vec& u : sphere_directions(n, 32))
      CHECK(support_value(ConvexBody(sum), u) ==
            Approx(support_value(ConvexBody(a), u) +
                   support_value(ConvexBody(b), u))
                .margin(1e-12));
  }
}

TEST_CASE("hausdorff distance on boxes matches the dense-direction oracle",
          "[geometry]") {
  const ConvexBody sq = ConvexBody(make_box({0, 0}, {1, 1}));
  CHECK(hausdorff_distance(sq, sq, 16) == 0.0);

  Vec shift(2);
  shift << 2, 0;
  const ConvexBody moved = transform_body(sq, 1.0, shift, false);
  CHECK(hausdorff_distance(sq, moved, 16) == Approx(2.0).margin(1e-12));

  // oracle value: sup |h difference| sits on the diagonal corner direction
  const ConvexBody big = ConvexBody(make_box({0, 0}, {2, 2}));
  const double oracle = testing::dense_hausdorff(sq, big);
  CHECK(oracle == Approx(std::sqrt(2.0)).margin(1e-4));
  CHECK(hausdorff_distance(sq, big, 16) == Approx(std::sqrt(2.0)).margin(1e-12));

  CHECK_THROWS_AS(
      hausdorff_distance(sq, ConvexBody(make_box({0}, {1})), 16),
      std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_distance(sq, big, 3), std::invalid_argument);
}

TEST_CASE("hausdorff distance is a pseudometric", "[geometry]") {
  Rng rng(4242);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = rng.uniform_int(1, 3);
    std::vector<ConvexBody> bodies;
    const bool use_boxes = trial % 2 == 0;
    for (int i = 0; i < 3; ++i)
      bodies.push_back(use_boxes ? ConvexBody(random_box(rng, n))
                                 : ConvexBody(random_zonotope(rng, n, n + 1)));
    const int dirs = 64;
    const double dab = hausdorff_distance(bodies[0], bodies[1], dirs);
    const double dba = hausdorff_distance(bodies[1], bodies[0], dirs);
    const double dbc = hausdorff_distance(bodies[1], bodies[2], dirs);
    const double dac = hausdorff_distance(bodies[0], bodies[2], dirs);
    CHECK(dab == dba);
    CHECK(dac <= dab + dbc + 1e-12);
  }
}

TEST_CASE("transform_body maps families to themselves", "[geometry]") {
  const ConvexBody sq = ConvexBody(make_box({0, 0}, {1, 1}));
  const ConvexBody doubled = transform_body(sq, 2.0);
  CHECK(body_equal(doubled, ConvexBody(make_box({0, 0}, {2, 2}))));
  CHECK(intrinsic_volume(doubled, 2) == Approx(4.0).margin(1e-12));

  CHECK(body_equal(transform_body(sq, 1.0, Vec(Vec::Zero(2)), false), sq));

  const ConvexBody reflected = transform_body(sq, 1.0, Vec(), true);
  CHECK(body_equal(reflected, ConvexBody(make_box({-1, -1}, {0, 0}))));
  CHECK(intrinsic_volumes(reflected) == intrinsic_volumes(sq));

  CHECK_THROWS_AS(transform_body(sq, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(transform_body(sq, -1.0), std::invalid_argument);
}

TEST_CASE("box intersection", "[geometry]") {
  const Box a = make_box({0, 0}, {2, 2});
  const Box b = make_box({1, 0}, {3, 2});
  const auto inter = box_intersect(a, b);
  REQUIRE(inter.has_value());
  CHECK(body_equal(ConvexBody(*inter), ConvexBody(make_box({1, 0}, {2, 2}))));

  CHECK_FALSE(box_intersect(make_box({0, 0}, {1, 1}), make_box({2, 2}, {3, 3}))
                  .has_value());

  const auto self = box_intersect(a, a);
  REQUIRE(self.has_value());
  CHECK(body_equal(ConvexBody(*self), ConvexBody(a)));
}

TEST_CASE("box union convexity decision", "[geometry]") {
  const Box a = make_box({0, 0}, {2, 2});
  const Box b = make_box({1, 0}, {3, 2});
  const auto uni = box_union_if_convex(a, b);
  REQUIRE(uni.has_value());
  CHECK(body_equal(ConvexBody(*uni), ConvexBody(make_box({0, 0}, {3, 2}))));
  CHECK(testing::union_convex_on_grid(a, b));

  const Box c = make_box({1, 0}, {3, 1});
  CHECK_FALSE(box_union_if_convex(a, c).has_value());
  CHECK_FALSE(testing::union_convex_on_grid(a, c));

  // containment returns the larger box
  const Box inner = make_box({0.5, 0.5}, {1.5, 1.5});
  const auto contained = box_union_if_convex(a, inner);
  REQUIRE(contained.has_value());
  CHECK(body_equal(ConvexBody(*contained), ConvexBody(a)));
}

TEST_CASE("box union convexity for degenerate boxes", "[geometry]") {
  // collinear touching segments merge
  const Box s1 = make_box({0, 1}, {1, 1});
  const Box s2 = make_box({1, 1}, {2, 1});
  const auto merged = box_union_if_convex(s1, s2);
  REQUIRE(merged.has_value());
  CHECK(body_equal(ConvexBody(*merged), ConvexBody(make_box({0, 1}, {2, 1}))));

  // collinear with a gap
  CHECK_FALSE(box_union_if_convex(s1, make_box({1.5, 1}, {2, 1})).has_value());
  // parallel hulls
  CHECK_FALSE(box_union_if_convex(s1, make_box({0, 2}, {1, 2})).has_value());
  // segment sticking out of a square
  CHECK_FALSE(
      box_union_if_convex(make_box({0, 0}, {1, 1}), make_box({1, 0.5}, {2, 0.5}))
          .has_value());
  // edge of the square is contained in it
  const auto edge =
      box_union_if_convex(make_box({0, 0}, {1, 1}), make_box({0, 1}, {1, 1}));
  REQUIRE(edge.has_value());
  CHECK(body_equal(ConvexBody(*edge), ConvexBody(make_box({0, 0}, {1, 1}))));
  // distinct points
  CHECK_FALSE(box_union_if_convex(make_box({0, 0}, {0, 0}),
                                  make_box({1, 0}, {1, 0}))
                  .has_value());
}

TEST_CASE("embedding preserves intrinsic volumes up to the inner degree",
          "[geometry]") {
  const Frame axis = Frame::make({Vec(Vec::Unit(2, 0))});
  const EmbeddedBody seg = embed(unit_cube(1), axis, Vec::Zero(2));
  CHECK(intrinsic_volumes(ConvexBody(seg)) == std::vector<double>{1.0, 1.0, 0.0});

  Vec diag(2);
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const EmbeddedBody diag_seg = embed(unit_cube(1), Frame::make({diag}), Vec::Zero(2));
  CHECK(intrinsic_volume(ConvexBody(diag_seg), 1) == Approx(1.0).margin(1e-12));
  // sampled support widths confirm the length is preserved
  const double h_plus = support_value(ConvexBody(diag_seg), diag);
  const double h_minus = support_value(ConvexBody(diag_seg), Vec(-diag));
  CHECK(h_plus + h_minus == Approx(1.0).margin(1e-12));

  std::vector<Vec> plane = {Vec(Vec::Unit(3, 0)), Vec(Vec::Unit(3, 1))};
  const EmbeddedBody sq3 = embed(unit_cube(2), Frame::make(plane), Vec::Zero(3));
  const std::vector<double> v = intrinsic_volumes(ConvexBody(sq3));
  CHECK(v[2] == Approx(1.0).margin(1e-12));
  CHECK(v[3] == 0.0);

  Vec bad(2);
  bad << 1.0, 1.0;  // not unit
  CHECK_THROWS_AS(Frame::make({bad}), std::invalid_argument);
  CHECK_THROWS_AS(embed(unit_cube(2), axis, Vec::Zero(2)), std::invalid_argument);
}

TEST_CASE("monte-carlo steiner fit reproduces exact volumes", "[geometry][mc]") {
  std::vector<double> radii;
  for (int i = 1; i <= 10; ++i) radii.push_back(0.1 * i);

  const McVolumes sq =
      steiner_mc_volumes(ConvexBody(make_box({0, 0}, {1, 1})), radii, 1000000, 7);
  CHECK(sq.values[0] == Approx(1.0).epsilon(0.02));
  CHECK(sq.values[1] == Approx(2.0).epsilon(0.02));
  CHECK(sq.values[2] == Approx(1.0).epsilon(0.02));

  const McVolumes pt =
      steiner_mc_volumes(ConvexBody(make_box({0, 0}, {0, 0})), radii, 200000, 7);
  CHECK(pt.values[0] == Approx(1.0).epsilon(0.02));
  CHECK(pt.values[1] == Approx(0.0).margin(0.02));
  CHECK(pt.values[2] == Approx(0.0).margin(0.02));

  const McVolumes cube = steiner_mc_volumes(
      ConvexBody(make_box({0, 0, 0}, {1, 1, 1})), radii, 1000000, 7);
  CHECK(cube.values[0] == Approx(1.0).epsilon(0.03));
  CHECK(cube.values[1] == Approx(3.0).epsilon(0.03));
  CHECK(cube.values[2] == Approx(3.0).epsilon(0.03));
  CHECK(cube.values[3] == Approx(1.0).epsilon(0.03));
}

TEST_CASE("monte-carlo steiner fit: agreement within three standard errors",
          "[geometry][mc]") {
  Rng rng(91);
  std::vector<double> radii = {0.25, 0.4, 0.55, 0.7, 0.85, 1.0};
  for (int trial = 0; trial < 4; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const ConvexBody body = (trial % 2) ? ConvexBody(random_box(rng, n))
                                        : ConvexBody(random_zonotope(rng, n, n + 1));
    const McVolumes mc = steiner_mc_volumes(body, radii, 200000, 1234 + trial);
    const std::vector<double> exact = intrinsic_volumes(body);
    for (int k = 0; k <= n; ++k)
      CHECK(std::abs(mc.values[static_cast<std::size_t>(k)] -
                     exact[static_cast<std::size_t>(k)]) <=
            3.0 * mc.std_errors[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("monte-carlo results are bitwise thread-count independent",
          "[geometry][mc]") {
  Rng rng(5);
  const Zonotope z = random_zonotope(rng, 3, 4);
  std::vector<double> radii = {0.3, 0.6, 0.9, 1.2};
  const McVolumes one = steiner_mc_volumes(ConvexBody(z), radii, 150000, 17, 1);
  const McVolumes four = steiner_mc_volumes(ConvexBody(z), radii, 150000, 17, 4);
  CHECK(one.values == four.values);
  CHECK(one.std_errors == four.std_errors);
}

TEST_CASE("monte-carlo input validation", "[geometry][mc]") {
  const ConvexBody sq = ConvexBody(make_box({0, 0}, {1, 1}));
  CHECK_THROWS_AS(steiner_mc_volumes(sq, {0.1, 0.2}, 20000, 1),
                  std::invalid_argument);  // too few radii
  CHECK_THROWS_AS(steiner_mc_volumes(sq, {0.1, 0.2, 0.2}, 20000, 1),
                  std::invalid_argument);  // duplicate radii
  CHECK_THROWS_AS(steiner_mc_volumes(sq, {0.1, 0.2, 0.3}, 100, 1),
                  std::invalid_argument);  // too few samples
}

TEST_CASE("point-to-body distances sandwich between independent bounds",
          "[geometry]") {
  Rng rng(808);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const Zonotope z = random_zonotope(rng, n, n);
    const BodyDistance dist(ConvexBody(z));
    const Box bb = bounding_box(ConvexBody(z));
    const int m = static_cast<int>(z.generators.size());
    const int steps = 24;
    for (int i = 0; i < 10; ++i) {
      Vec x(n);
      for (int d = 0; d < n; ++d)
        x[d] = rng.uniform(bb.lo[d] - 1.0, bb.hi[d] + 1.0);
      const double got = dist(x);
      // lower bound: supporting half-space gaps
      double lower = 0.0;
      for (const Vec& u : sphere_directions(n, 256))
        lower = std::max(lower, x.dot(u) - support_value(ConvexBody(z), u));
      // upper bound: enumerate a lambda-grid of zonotope points
      double upper = std::numeric_limits<double>::infinity();
      std::vector<int> idx(static_cast<std::size_t>(m), 0);
      while (true) {
        Vec p = z.base;
        for (int g = 0; g < m; ++g)
          p += (idx[static_cast<std::size_t>(g)] / static_cast<double>(steps)) *
               z.generators[static_cast<std::size_t>(g)];
        upper = std::min(upper, (x - p).norm());
        int g = 0;
        while (g < m && ++idx[static_cast<std::size_t>(g)] > steps)
          idx[static_cast<std::size_t>(g++)] = 0;
        if (g == m) break;
      }
      CHECK(got >= lower - 1e-8);
      CHECK(got <= upper + 1e-9);
      CHECK(dist.within(x, got + 1e-9));
      if (got > 1e-6) CHECK_FALSE(dist.within(x, got - 1e-6));
    }
  }
}
