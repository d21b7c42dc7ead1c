// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sigscope/interval_set.hpp"

namespace sigscope {

struct Segment {
  double duration;  // arclength, > 0
  double angle;     // radians, stored unreduced (not folded mod 2*pi)
};

// Piecewise-constant angular function of a unit-speed planar path. Immutable
// after construction; total length is the left-to-right sum of durations.
class AngularPath {
 public:
  explicit AngularPath(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  double length() const { return length_; }

  // start time of segment i; starts_[size()] == length()
  double segment_start(std::size_t i) const { return starts_[i]; }
  // index of the segment containing t (right-continuous; t == L maps to last)
  std::size_t segment_index(double t) const;
  double angle_at(double t) const { return segments_[segment_index(t)].angle; }

  AngularPath reversed() const;
  // sub-path on [t0, t1]; boundary segments are shortened, angles kept
  AngularPath restricted(double t0, double t1) const;
  AngularPath concatenated(const AngularPath& tail) const;

  double min_angle() const;
  double max_angle() const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> starts_;
  double length_;
};

struct PlanarPath {
  std::vector<std::array<double, 2>> vertices;
  double polyline_length() const;
  std::array<double, 2> displacement() const;
};

// Exact segment integration x += d*cos(beta), y += d*sin(beta) from the origin.
PlanarPath realize(const AngularPath& angular);

struct CuspWitness {
  double delta;
  double a_delta;
  double b_delta;
  IntervalSet F;  // finite disjoint union of closed intervals within [0, L]
};

struct RegularCuspHypothesis {
  double a = 0.0;
  std::vector<CuspWitness> witnesses;
  const CuspWitness* find(double delta) const;
};

struct CuspCheckResult {
  bool pass = false;
  int failed_condition = 0;  // 0 = none, 1 or 2 per Definition of a regular cusp
  std::optional<std::size_t> violating_segment;
  std::string message;
};

// Checks the supplied witness for `delta`: (i) every segment angle lies in
// [a, a+pi]; (ii) every segment meeting F with positive measure has angle in
// [a_delta, b_delta]. Throws std::invalid_argument when no witness matches.
CuspCheckResult check_regular_cusp(const AngularPath& angular,
                                   const RegularCuspHypothesis& hyp,
                                   double delta);

// Strictly increasing piecewise-linear table on [0, L/2].
class ThetaTable {
 public:
  explicit ThetaTable(std::vector<std::array<double, 2>> knots);
  static ThetaTable linear(double half_length, double lo, double hi);
  double operator()(double t) const;
  const std::vector<std::array<double, 2>>& knots() const { return knots_; }

 private:
  std::vector<std::array<double, 2>> knots_;
};

// Angular data of the singular cusp family: theta climbs from a-r to a on
// [0, L/2]; after the pi-turn the departure speed is scaled by c. c = 1 is the
// tree-like degenerate member.
struct SingularCuspSpec {
  double total_length;  // L
  double r;             // in (0, pi/4)
  double a;
  double c;             // in (0, 1]; c = 1 is tree-like
  ThetaTable theta;

  SingularCuspSpec(double L, double r, double a, double c, ThetaTable theta);
};

// alpha_t = theta_t on [0, L/2), alpha_t = c*(theta_{L-t} - a) + (a - pi) on
// (L/2, L]; each half becomes `resolution` equal-duration segments sampled at
// midpoints. The returned path is the paper's alpha (time-reversed gamma
// angle); reverse it to obtain beta.
AngularPath make_singular_cusp(const SingularCuspSpec& spec, int resolution);

// v followed by -v: the canonical tree-like path with trivial signature.
AngularPath make_tree_like(double angle, double half_length);

}  // namespace sigscope
