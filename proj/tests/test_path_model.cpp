// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "sigscope/angle_utils.hpp"
#include "sigscope/angular_path.hpp"
#include "sigscope/rng.hpp"

using namespace sigscope;

TEST_CASE("realize: single horizontal segment") {
  const auto planar = realize(AngularPath({{1.0, 0.0}}));
  REQUIRE(planar.vertices.size() == 2);
  CHECK(planar.vertices[0][0] == 0.0);
  CHECK(planar.vertices[0][1] == 0.0);
  CHECK(planar.vertices[1][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(planar.vertices[1][1]) <= 1e-15);
}

TEST_CASE("realize: axis-aligned L-shape") {
  const auto planar = realize(AngularPath({{1.0, 0.0}, {1.0, kPi / 2}}));
  CHECK(planar.vertices[2][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(planar.vertices[2][1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("realize: tree-like path returns to the origin") {
  const auto planar = realize(make_tree_like(0.0, 1.0));
  CHECK(std::fabs(planar.vertices[2][0]) <= 1e-12);
  CHECK(std::fabs(planar.vertices[2][1]) <= 1e-12);
}

TEST_CASE("unit speed: polyline length equals L") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Segment> segs;
    const int n = rng.uniform_int(1, 12);
    for (int i = 0; i < n; ++i) {
      segs.push_back({rng.uniform(0.01, 3.0), rng.uniform(-10.0, 10.0)});
    }
    const AngularPath path(segs);
    const auto planar = realize(path);
    CHECK(planar.polyline_length() ==
          doctest::Approx(path.length()).epsilon(1e-12));
  }
}

TEST_CASE("reverse_time: order reversed, angles kept, involution") {
  const AngularPath p({{1.0, 0.0}, {2.0, 1.0}});
  const AngularPath r = p.reversed();
  CHECK(r.segments()[0].duration == 2.0);
  CHECK(r.segments()[0].angle == 1.0);
  CHECK(r.segments()[1].duration == 1.0);

  const AngularPath single({{0.7, 0.3}});
  CHECK(single.reversed().segments()[0].angle == 0.3);

  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Segment> segs;
    const int n = rng.uniform_int(1, 9);
    for (int i = 0; i < n; ++i) {
      segs.push_back({rng.uniform(0.1, 2.0), rng.uniform(-4.0, 4.0)});
    }
    const AngularPath path(segs);
    const AngularPath twice = path.reversed().reversed();
    REQUIRE(twice.size() == path.size());
    double forward_sum = 0.0, reversed_sum = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(twice.segments()[i].duration == path.segments()[i].duration);
      CHECK(twice.segments()[i].angle == path.segments()[i].angle);
      forward_sum += path.segments()[i].duration;
      reversed_sum += path.reversed().segments()[i].duration;
    }
    CHECK(forward_sum == doctest::Approx(reversed_sum).epsilon(1e-15));
  }
}

TEST_CASE("make_singular_cusp: frozen midpoint example") {
  // c=1, linear theta, L=2, a=0, r=0.5, resolution 2
  const SingularCuspSpec spec(2.0, 0.5, 0.0, 1.0, ThetaTable::linear(1.0, -0.5, 0.0));
  const AngularPath path = make_singular_cusp(spec, 2);
  REQUIRE(path.size() == 4);
  CHECK(path.segments()[0].angle == doctest::Approx(-0.375).epsilon(1e-15));
  CHECK(path.segments()[1].angle == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(path.segments()[2].angle == doctest::Approx(-kPi - 0.125).epsilon(1e-15));
  CHECK(path.segments()[3].angle == doctest::Approx(-kPi - 0.375).epsilon(1e-15));
  for (const auto& seg : path.segments()) CHECK(seg.duration == 0.5);
}

TEST_CASE("make_singular_cusp: jump across L/2 is exactly pi") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const double L = rng.uniform(0.5, 3.0);
    const double r = rng.uniform(0.05, kPi / 4 - 0.01);
    const double a = rng.uniform(-2.0, 2.0);
    const double c = rng.uniform(0.1, 1.0);
    const SingularCuspSpec spec(L, r, a, c, ThetaTable::linear(L / 2, a - r, a));
    const int res = rng.uniform_int(2, 40);
    const AngularPath path = make_singular_cusp(spec, res);
    const double before = path.segments()[static_cast<std::size_t>(res) - 1].angle;
    const double after = path.segments()[static_cast<std::size_t>(res)].angle;
    // alpha(L/2-) - alpha(L/2+) -> pi as resolution grows; at midpoint
    // sampling the two samples sit h/2 on each side of the jump
    const double h = (L / 2) / res;
    const double slope_gap = (1.0 + c) * r / (L / 2) * (h / 2);
    CHECK(std::fabs((before - after) - kPi) <= slope_gap + 1e-12);
  }
}

TEST_CASE("make_singular_cusp: c=1 closes up as resolution grows") {
  const SingularCuspSpec spec(2.0, 0.5, 0.0, 1.0, ThetaTable::linear(1.0, -0.5, 0.0));
  const AngularPath path = make_singular_cusp(spec, 1000);
  const auto planar = realize(path);
  const auto d = planar.displacement();
  CHECK(std::hypot(d[0], d[1]) <= 2.0 * 2.0 / 1000.0);
}

TEST_CASE("make_singular_cusp: rejects resolution < 2") {
  const SingularCuspSpec spec(2.0, 0.5, 0.0, 1.0, ThetaTable::linear(1.0, -0.5, 0.0));
  CHECK_THROWS_AS(make_singular_cusp(spec, 1), std::invalid_argument);
}

TEST_CASE("check_regular_cusp: L-shape passes the no-cusp hypothesis") {
  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  RegularCuspHypothesis hyp;
  hyp.a = -kPi / 4;
  hyp.witnesses.push_back(
      {0.1, -0.1, kPi / 2 + 0.1, IntervalSet::single(0.0, 2.0)});
  const auto res = check_regular_cusp(lshape, hyp, 0.1);
  CHECK(res.pass);
}

TEST_CASE("check_regular_cusp: angle beyond a + pi is reported") {
  const AngularPath path({{1.0, 0.0}, {0.5, 1.5 * kPi}});
  RegularCuspHypothesis hyp;
  hyp.a = 0.0;
  hyp.witnesses.push_back({0.1, 0.1, kPi - 0.1, IntervalSet::single(0.0, 1.5)});
  const auto res = check_regular_cusp(path, hyp, 0.1);
  CHECK(!res.pass);
  CHECK(res.failed_condition == 1);
  REQUIRE(res.violating_segment.has_value());
  CHECK(*res.violating_segment == 1);
}

TEST_CASE("check_regular_cusp: missing witness throws") {
  const AngularPath path({{1.0, 0.0}});
  RegularCuspHypothesis hyp;
  hyp.a = 0.0;
  CHECK_THROWS_AS(check_regular_cusp(path, hyp, 0.5), std::invalid_argument);
}

TEST_CASE("check_regular_cusp: the c=1 singular cusp is not a regular cusp") {
  // angular range spans pi + r > pi, so condition (i) fails for every a
  const SingularCuspSpec spec(2.0, 0.5, 0.0, 1.0, ThetaTable::linear(1.0, -0.5, 0.0));
  const AngularPath path = make_singular_cusp(spec, 64);
  const double lo = path.min_angle();
  const double hi = path.max_angle();
  CHECK(hi - lo > kPi);
  const double delta = 0.05;
  const int grid = static_cast<int>(std::ceil((hi - lo) / (kPi / 1000.0)));
  for (int i = 0; i <= grid; ++i) {
    const double a = lo - 0.01 + (hi - lo + 0.02) * i / grid;
    RegularCuspHypothesis hyp;
    hyp.a = a;
    // witness covering all of [0, L] except a delta-window around the jump
    CuspWitness w;
    w.delta = delta;
    w.F = IntervalSet({{0.0, 1.0 - 0.4 * delta}, {1.0 + 0.4 * delta, 2.0}});
    w.a_delta = a + 0.01;
    w.b_delta = a + kPi - 0.01;
    hyp.witnesses.push_back(std::move(w));
    CHECK(!check_regular_cusp(path, hyp, delta).pass);
  }
}

TEST_CASE("interval set arithmetic is exact") {
  const IntervalSet F({{0.0, 1.0}, {2.0, 3.5}});
  CHECK(F.measure() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(F.measure_intersection(0.5, 2.5) == doctest::Approx(1.0).epsilon(1e-15));
  const IntervalSet gap = F.complement_within(0.0, 3.5);
  CHECK(gap.measure() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gap.intervals().size() == 1);
  CHECK(F.subtract(IntervalSet::single(0.25, 0.75)).measure() ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(F.intersect(IntervalSet::single(0.5, 2.5)).measure() ==
        doctest::Approx(1.0).epsilon(1e-15));
}
