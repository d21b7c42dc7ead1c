// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "sigscope/angular_path.hpp"

namespace sigscope {

// Truncated signature over the plane. Level n is a dense coordinate array of
// length 2^n indexed by words over {1,2} in lexicographic order (first letter
// is the most significant bit). Level 0 is the scalar 1 exactly.
class TensorSeries {
 public:
  static TensorSeries identity(int depth);
  // tensor exponential of a single displacement: level n = v^{x n}/n!
  static TensorSeries segment(std::array<double, 2> v, int depth);

  int depth() const { return depth_; }
  std::span<const double> level(int n) const { return levels_[n]; }
  std::span<double> level_mut(int n) { return levels_[n]; }

 private:
  explicit TensorSeries(int depth);
  int depth_;
  std::vector<std::vector<double>> levels_;
};

// Chen product truncated at the common depth; throws on depth mismatch.
TensorSeries chen_concat(const TensorSeries& a, const TensorSeries& b);

// Left-to-right Chen product of per-segment tensor exponentials.
TensorSeries signature(const AngularPath& path, int depth);

// Euclidean norm of a level; a computable proxy with
// injective <= hs <= projective (reported, never asserted against the exact
// projective norm).
double hs_norm(std::span<const double> level);
double log_hs_norm(std::span<const double> level);  // -inf for the zero array

// max over unit vectors w on a uniform angular grid of |<level, w^{x n}>|.
// The grid size is rounded up to a power of two so the evaluation sets are
// nested and the result is monotone nondecreasing in `grid`. Valid lower
// bound for the injective (hence projective) norm.
double rank_one_lower_bound(std::span<const double> level, int grid);

// Lower bound from general (slot-wise) unit rank-one functionals
// w_1 x ... x w_n, maximized by deterministic alternating ascent seeded from
// the symmetric grid optimum and the axis step patterns. Always >= the
// symmetric bound it is seeded with; still a valid injective-norm lower bound.
double free_rank_one_lower_bound(std::span<const double> level, int grid);

// log(L^n / n!); callers compare level norms against it in log space so that
// deep levels neither overflow nor underflow.
double log_variation_upper_bound(double L, int n);

double log_factorial(int n);

// (n! * norm)^{1/n} computed in log space; returns 0 for log_norm = -inf.
double normalized_level_estimate(double log_norm, int n);

}  // namespace sigscope
