// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sigscope/angle_utils.hpp"
#include "sigscope/rng.hpp"
#include "sigscope/tensor_series.hpp"

using namespace sigscope;

namespace {

AngularPath random_polygon(Rng& rng, int max_segments, double angle_spread) {
  std::vector<Segment> segs;
  const int n = rng.uniform_int(2, max_segments);
  const double center = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    segs.push_back({rng.uniform(0.05, 0.6),
                    center + rng.uniform(-angle_spread, angle_spread)});
  }
  return AngularPath(segs);
}

}  // namespace

TEST_CASE("segment signature is the tensor exponential") {
  const auto sig = TensorSeries::segment({1.0, 0.0}, 3);
  CHECK(sig.level(0)[0] == 1.0);
  CHECK(sig.level(3)[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));  // word 111
  for (std::size_t i = 1; i < 8; ++i) CHECK(sig.level(3)[i] == 0.0);

  const auto zero = TensorSeries::segment({0.0, 0.0}, 4);
  for (int n = 1; n <= 4; ++n) {
    for (double x : zero.level(n)) CHECK(x == 0.0);
  }

  const auto diag = TensorSeries::segment({1.0, 1.0}, 2);
  for (double x : diag.level(2)) CHECK(x == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("chen_concat: identity is the unit") {
  Rng rng(7);
  const auto s = TensorSeries::segment({rng.uniform(-1, 1), rng.uniform(-1, 1)}, 5);
  const auto u = chen_concat(s, TensorSeries::identity(5));
  for (int n = 0; n <= 5; ++n) {
    for (std::size_t i = 0; i < u.level(n).size(); ++i) {
      CHECK(u.level(n)[i] == doctest::Approx(s.level(n)[i]).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(chen_concat(s, TensorSeries::identity(4)), std::invalid_argument);
}

TEST_CASE("chen_concat: L-shape level 2 against Simpson quadrature") {
  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  const auto sig = signature(lshape, 2);
  const auto quad = oracles::simpson_level2(lshape, 5000);
  // frozen values from the quadrature oracle: (1/2, 1, 0, 1/2)
  const double expected[4] = {0.5, 1.0, 0.0, 0.5};
  for (int i = 0; i < 4; ++i) {
    CHECK(quad[static_cast<std::size_t>(i)] ==
          doctest::Approx(expected[i]).epsilon(1e-10));
    CHECK(sig.level(2)[static_cast<std::size_t>(i)] ==
          doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("chen_concat: associativity at depth 6") {
  Rng rng(8);
  const auto a = TensorSeries::segment({rng.uniform(-1, 1), rng.uniform(-1, 1)}, 6);
  const auto b = TensorSeries::segment({rng.uniform(-1, 1), rng.uniform(-1, 1)}, 6);
  const auto c = TensorSeries::segment({rng.uniform(-1, 1), rng.uniform(-1, 1)}, 6);
  const auto left = chen_concat(chen_concat(a, b), c);
  const auto right = chen_concat(a, chen_concat(b, c));
  for (int n = 0; n <= 6; ++n) {
    for (std::size_t i = 0; i < left.level(n).size(); ++i) {
      CHECK(left.level(n)[i] == doctest::Approx(right.level(n)[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("signature: tree-like path vanishes at every level") {
  const auto sig = signature(make_tree_like(0.0, 1.0), 8);
  for (int n = 1; n <= 8; ++n) {
    for (double x : sig.level(n)) CHECK(std::fabs(x) <= 1e-12);
  }
}

TEST_CASE("signature: splitting a straight line changes nothing") {
  Rng rng(9);
  std::vector<Segment> segs;
  double total = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double d = rng.uniform(0.05, 0.4);
    segs.push_back({d, 0.7});
    total += d;
  }
  const auto split = signature(AngularPath(segs), 8);
  const CosSin cs = reduced_cos_sin(0.7);
  const auto whole = TensorSeries::segment({total * cs.c, total * cs.s}, 8);
  for (int n = 0; n <= 8; ++n) {
    for (std::size_t i = 0; i < whole.level(n).size(); ++i) {
      CHECK(split.level(n)[i] == doctest::Approx(whole.level(n)[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("signature: level 1 is the displacement, Levy area via shoelace") {
  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  const auto sig = signature(lshape, 2);
  const auto planar = realize(lshape);
  const auto d = planar.displacement();
  CHECK(sig.level(1)[0] == doctest::Approx(d[0]).epsilon(1e-12));
  CHECK(sig.level(1)[1] == doctest::Approx(d[1]).epsilon(1e-12));
  const double levy = (sig.level(2)[1] - sig.level(2)[2]) / 2.0;
  CHECK(levy == doctest::Approx(oracles::shoelace_area(planar)).epsilon(1e-12));
}

TEST_CASE("Chen identity on random polygon pairs up to depth 8") {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const AngularPath p = random_polygon(rng, 5, 1.4);
    const AngularPath q = random_polygon(rng, 5, 1.4);
    const auto joined = signature(p.concatenated(q), 8);
    const auto product = chen_concat(signature(p, 8), signature(q, 8));
    for (int n = 0; n <= 8; ++n) {
      for (std::size_t i = 0; i < joined.level(n).size(); ++i) {
        CHECK(joined.level(n)[i] ==
              doctest::Approx(product.level(n)[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("shuffle spot-check at level 2") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sig = signature(random_polygon(rng, 8, 2.0), 2);
    const double lhs = sig.level(2)[1] + sig.level(2)[2];
    const double rhs = sig.level(1)[0] * sig.level(1)[1];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("hs_norm basics") {
  const auto sig = TensorSeries::segment({0.6, 0.8}, 6);  // unit vector
  for (int n = 1; n <= 6; ++n) {
    CHECK(hs_norm(sig.level(n)) ==
          doctest::Approx(std::exp(-log_factorial(n))).epsilon(1e-13));
  }
  const std::vector<double> zeros(8, 0.0);
  CHECK(hs_norm(zeros) == 0.0);

  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  CHECK(hs_norm(signature(lshape, 2).level(2)) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));
}

TEST_CASE("rank_one_lower_bound: rank-one tensors are recovered") {
  Rng rng(12);
  for (int n : {3, 8, 20}) {
    const double theta = rng.uniform(0.0, kTwoPi);
    const auto sig = TensorSeries::segment({std::cos(theta), std::sin(theta)}, n);
    const double bound = rank_one_lower_bound(sig.level(n), 360);
    CHECK(bound >= (1.0 - 1e-3) * std::exp(-log_factorial(n)));
    CHECK(bound <= hs_norm(sig.level(n)) * (1 + 1e-12));
  }
  const std::vector<double> zeros(16, 0.0);
  CHECK(rank_one_lower_bound(zeros, 64) == 0.0);
  CHECK_THROWS_AS(rank_one_lower_bound(zeros, 4), std::invalid_argument);
}

TEST_CASE("rank_one_lower_bound: L-shape level 2 maximum is 1") {
  const AngularPath lshape({{1.0, 0.0}, {1.0, kPi / 2}});
  const auto level = signature(lshape, 2).level(2);
  const double bound = rank_one_lower_bound(level, 3600);
  // oracle: maximize |c^2/2 + c s + s^2/2| on [0, 2 pi)
  const double oracle = oracles::golden_max(
      [&](double th) {
        const double c = std::cos(th), s = std::sin(th);
        return std::fabs(0.5 * c * c + c * s + 0.5 * s * s);
      },
      0.0, kTwoPi, 3600);
  CHECK(oracle == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bound == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rank_one_lower_bound is monotone in the grid") {
  Rng rng(13);
  const auto sig = signature(random_polygon(rng, 6, 1.2), 6);
  for (int n = 2; n <= 6; ++n) {
    double prev = 0.0;
    for (int grid : {8, 16, 64, 100, 256, 1000, 4096}) {
      const double v = rank_one_lower_bound(sig.level(n), grid);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("free_rank_one_lower_bound dominates the symmetric bound") {
  Rng rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const auto sig = signature(random_polygon(rng, 6, 1.2), 8);
    for (int n = 2; n <= 8; ++n) {
      const double sym = rank_one_lower_bound(sig.level(n), 256);
      const double free = free_rank_one_lower_bound(sig.level(n), 256);
      CHECK(free >= sym * (1 - 1e-13));
      CHECK(free <= hs_norm(sig.level(n)) * (1 + 1e-12));
    }
  }
}

TEST_CASE("variation upper bound") {
  CHECK(log_variation_upper_bound(1.0, 7) ==
        doctest::Approx(-log_factorial(7)).epsilon(1e-15));
  CHECK(log_variation_upper_bound(2.0, 10) ==
        doctest::Approx(std::log(1024.0 / 3628800.0)).epsilon(1e-13));

  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const AngularPath path = random_polygon(rng, 8, 2.5);
    const auto sig = signature(path, 12);
    for (int n = 1; n <= 12; ++n) {
      const double log_hs = log_hs_norm(sig.level(n));
      CHECK(log_hs <= log_variation_upper_bound(path.length(), n) +
                          std::log1p(1e-9));
    }
  }
}

TEST_CASE("normalized estimate in log space") {
  CHECK(normalized_level_estimate(-log_factorial(16), 16) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(normalized_level_estimate(
            -std::numeric_limits<double>::infinity(), 9) == 0.0);
}
