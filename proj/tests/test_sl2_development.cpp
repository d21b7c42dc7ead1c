// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sigscope/angle_utils.hpp"
#include "sigscope/rng.hpp"
#include "sigscope/sl2.hpp"

using namespace sigscope;

TEST_CASE("direction_matrix hits the basis elements") {
  const Sl2Matrix m0 = direction_matrix(0.0);
  CHECK(m0.m11 == 1.0);
  CHECK(m0.m12 == 0.0);
  CHECK(m0.m21 == 0.0);
  CHECK(m0.m22 == -1.0);

  const Sl2Matrix m90 = direction_matrix(kPi / 2);
  CHECK(std::fabs(m90.m11) <= 1e-15);
  CHECK(m90.m12 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m90.m21 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(m90.m22) <= 1e-15);

  // exact antipodal cancellation at the double pi
  const Sl2Matrix mpi = direction_matrix(kPi);
  CHECK(mpi.m11 == -1.0);
  CHECK(mpi.m12 == 0.0);
  CHECK(mpi.m21 == 0.0);
  CHECK(mpi.m22 == 1.0);
}

TEST_CASE("direction_matrix squares to the identity") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Sl2Matrix m = direction_matrix(rng.uniform(-12.0, 12.0));
    const Sl2Matrix sq = m * m;
    CHECK(sq.m11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sq.m22 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(sq.m12) <= 1e-14);
    CHECK(std::fabs(sq.m21) <= 1e-14);
    CHECK(std::fabs(m.m11 + m.m22) <= 1e-15);  // trace zero
  }
}

TEST_CASE("segment_propagator closed form") {
  const auto id = segment_propagator(0.3, 0.0);
  CHECK(id.log_scale == 0.0);
  CHECK(id.unit.m11 == 1.0);
  CHECK(id.unit.m22 == 1.0);

  const auto diag = segment_propagator(0.0, 1.0);
  // represented matrix diag(e, 1/e)
  CHECK(std::exp(diag.log_scale) * diag.unit.m11 ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(std::exp(diag.log_scale) * diag.unit.m22 ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  const auto rot = segment_propagator(kPi / 2, 1.0);
  const double scale = std::exp(rot.log_scale);
  CHECK(scale * rot.unit.m11 == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
  CHECK(scale * rot.unit.m12 == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
  CHECK(scale * rot.unit.m21 == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
  CHECK(scale * rot.unit.m22 == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
}

TEST_CASE("segment_propagator against a scaling-and-squaring oracle") {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const double beta = rng.uniform(-4.0, 4.0);
    const double x = rng.uniform(0.0, 5.0);
    const Sl2Matrix m = direction_matrix(beta);
    const auto oracle =
        oracles::expm_2x2({x * m.m11, x * m.m12, x * m.m21, x * m.m22});
    const auto prop = segment_propagator(beta, x);
    const double scale = std::exp(prop.log_scale);
    CHECK(scale * prop.unit.m11 == doctest::Approx(oracle[0]).epsilon(1e-12));
    CHECK(scale * prop.unit.m12 == doctest::Approx(oracle[1]).epsilon(1e-12));
    CHECK(scale * prop.unit.m21 == doctest::Approx(oracle[2]).epsilon(1e-12));
    CHECK(scale * prop.unit.m22 == doctest::Approx(oracle[3]).epsilon(1e-12));
  }
}

TEST_CASE("develop: tree-like path gives the identity") {
  const AngularPath tree = make_tree_like(0.0, 1.0);
  for (double lambda : {1.0, 8.0, 100.0, 300.0}) {
    const auto dev = develop(tree, lambda);
    CHECK(std::fabs(log_operator_norm(dev)) <= 1e-10);
    CHECK(std::fabs(dev.log_scale) <= 1e-10);
    CHECK(dev.unit.m11 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(dev.unit.m22 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(dev.unit.m12) <= 1e-10);
    CHECK(std::fabs(dev.unit.m21) <= 1e-10);
  }
  // far beyond the de-scaling range only the norm channel is observable
  for (double lambda : {1024.0, 16384.0}) {
    CHECK(std::fabs(log_operator_norm(develop(tree, lambda))) <= 1e-8);
  }
}

TEST_CASE("develop: single segment norm is exactly lambda L") {
  for (double lambda : {1.0, 77.0, 4096.0}) {
    const auto dev = develop(AngularPath({{1.0, 0.4}}), lambda);
    CHECK(log_operator_norm(dev) == doctest::Approx(lambda).epsilon(1e-13));
  }
}

TEST_CASE("develop: L-shape at lambda = 100 against the long-double oracle") {
  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  const auto dev = develop(lshape, 100.0);
  const double log_norm = log_operator_norm(dev);
  const double oracle =
      static_cast<double>(oracles::ld_develop_log_norm(lshape, 100.0));
  CHECK(log_norm == doctest::Approx(oracle).epsilon(1e-12));
  // asymptotic form 2 lambda - log sqrt(2)
  CHECK(log_norm == doctest::Approx(200.0 - 0.5 * std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("operator norm: closed-form SVD properties") {
  CHECK(log_operator_norm(LogScaledMatrix::identity()) == 0.0);
  const auto diag = segment_propagator(0.0, 1.0);
  CHECK(log_operator_norm(diag) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    // random SL2 element as a short product of propagators
    LogScaledMatrix m = LogScaledMatrix::identity();
    for (int k = 0; k < 4; ++k) {
      m = multiply(m, segment_propagator(rng.uniform(-3.0, 3.0),
                                         rng.uniform(0.0, 2.0)));
    }
    const auto sv = singular_values(m.unit);
    // det = 1 after de-scaling: log sigma_max = -log sigma_min
    const double descale_max = std::log(sv.sigma_max) + m.log_scale;
    const double descale_min = std::log(sv.sigma_min) + m.log_scale;
    CHECK(descale_max == doctest::Approx(-descale_min).epsilon(1e-10));
  }
}

TEST_CASE("det stays 1 through a million-segment chain") {
  Rng rng(24);
  std::vector<Segment> segs;
  segs.reserve(1000000);
  for (int i = 0; i < 1000000; ++i) {
    segs.push_back({5e-6, rng.uniform(-2.0, 2.0)});
  }
  const auto dev = develop(AngularPath(std::move(segs)), 1.0);
  CHECK(std::fabs(log_abs_det(dev)) <= 1e-6);
}

TEST_CASE("multiplicativity over concatenation") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Segment> a, b;
    for (int i = 0; i < rng.uniform_int(1, 5); ++i) {
      a.push_back({rng.uniform(0.1, 1.0), rng.uniform(-3.0, 3.0)});
    }
    for (int i = 0; i < rng.uniform_int(1, 5); ++i) {
      b.push_back({rng.uniform(0.1, 1.0), rng.uniform(-3.0, 3.0)});
    }
    const AngularPath pa(a), pb(b);
    const double lambda = rng.uniform(0.5, 6.0);
    const auto joint = develop(pa.concatenated(pb), lambda);
    const auto split = multiply(develop(pa, lambda), develop(pb, lambda));
    CHECK(log_operator_norm(joint) ==
          doctest::Approx(log_operator_norm(split)).epsilon(1e-10));
    const double sj = std::exp(joint.log_scale - split.log_scale);
    CHECK(joint.unit.m11 == doctest::Approx(split.unit.m11 * sj).epsilon(1e-9));
    CHECK(joint.unit.m12 == doctest::Approx(split.unit.m12 * sj).epsilon(1e-9));
    CHECK(joint.unit.m21 == doctest::Approx(split.unit.m21 * sj).epsilon(1e-9));
    CHECK(joint.unit.m22 == doctest::Approx(split.unit.m22 * sj).epsilon(1e-9));
  }
}

TEST_CASE("development_length_bound") {
  const std::vector<double> schedule{10.0, 50.0, 100.0, 200.0};

  const auto line = development_length_bound(AngularPath({{1.0, 0.2}}), schedule);
  for (double b : line.bounds) CHECK(b == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(line.max_bound == doctest::Approx(1.0).epsilon(1e-13));

  const auto tree = development_length_bound(make_tree_like(0.0, 1.0), schedule);
  for (double b : tree.bounds) CHECK(std::fabs(b) <= 1e-10);

  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  const auto rep = development_length_bound(lshape, schedule);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    CHECK(rep.bounds[i] ==
          doctest::Approx(2.0 - 0.5 * std::log(2.0) / schedule[i]).epsilon(1e-9));
  }
  CHECK(rep.bounds[3] == doctest::Approx(1.998267).epsilon(1e-6));
  CHECK(rep.max_bound == doctest::Approx(rep.bounds[3]).epsilon(1e-15));
}

TEST_CASE("monotone certificate: bound never exceeds true length") {
  Rng rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Segment> segs;
    for (int i = 0; i < rng.uniform_int(1, 8); ++i) {
      segs.push_back({rng.uniform(0.05, 1.0), rng.uniform(-4.0, 4.0)});
    }
    const AngularPath path(segs);
    for (double lambda : {1.0, 10.0, 100.0, 1000.0}) {
      const double bound = log_operator_norm(develop(path, lambda)) / lambda;
      CHECK(bound <= path.length() + 1e-9);
    }
  }
}

TEST_CASE("default lambda schedule is 2^0 .. 2^14") {
  const auto schedule = default_lambda_schedule();
  REQUIRE(schedule.size() == 15);
  CHECK(schedule.front() == 1.0);
  CHECK(schedule.back() == 16384.0);
}
