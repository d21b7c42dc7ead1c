// SPDX-License-Identifier: Apache-2.0
#include "sigscope/angular_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigscope/angle_utils.hpp"

namespace sigscope {

AngularPath::AngularPath(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw std::invalid_argument("AngularPath: at least one segment required");
  }
  starts_.reserve(segments_.size() + 1);
  double t = 0.0;
  for (const auto& seg : segments_) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw std::invalid_argument("AngularPath: every duration must be > 0");
    }
    if (!std::isfinite(seg.angle)) {
      throw std::invalid_argument("AngularPath: angle must be finite");
    }
    starts_.push_back(t);
    t += seg.duration;
  }
  starts_.push_back(t);
  length_ = t;
}

std::size_t AngularPath::segment_index(double t) const {
  if (t <= 0.0) return 0;
  if (t >= length_) return segments_.size() - 1;
  auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

AngularPath AngularPath::reversed() const {
  std::vector<Segment> rev(segments_.rbegin(), segments_.rend());
  return AngularPath(std::move(rev));
}

AngularPath AngularPath::restricted(double t0, double t1) const {
  if (!(t0 >= 0.0) || !(t1 <= length_) || !(t1 > t0)) {
    throw std::invalid_argument("AngularPath::restricted: need 0 <= t0 < t1 <= L");
  }
  std::vector<Segment> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const double lo = std::max(starts_[i], t0);
    const double hi = std::min(starts_[i + 1], t1);
    if (hi > lo) out.push_back({hi - lo, segments_[i].angle});
  }
  return AngularPath(std::move(out));
}

AngularPath AngularPath::concatenated(const AngularPath& tail) const {
  std::vector<Segment> out = segments_;
  out.insert(out.end(), tail.segments_.begin(), tail.segments_.end());
  return AngularPath(std::move(out));
}

double AngularPath::min_angle() const {
  double m = segments_[0].angle;
  for (const auto& s : segments_) m = std::min(m, s.angle);
  return m;
}

double AngularPath::max_angle() const {
  double m = segments_[0].angle;
  for (const auto& s : segments_) m = std::max(m, s.angle);
  return m;
}

double PlanarPath::polyline_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    total += std::hypot(vertices[i][0] - vertices[i - 1][0],
                        vertices[i][1] - vertices[i - 1][1]);
  }
  return total;
}

std::array<double, 2> PlanarPath::displacement() const {
  return {vertices.back()[0] - vertices.front()[0],
          vertices.back()[1] - vertices.front()[1]};
}

PlanarPath realize(const AngularPath& angular) {
  PlanarPath out;
  out.vertices.reserve(angular.size() + 1);
  double x = 0.0, y = 0.0;
  out.vertices.push_back({x, y});
  for (const auto& seg : angular.segments()) {
    const CosSin cs = reduced_cos_sin(seg.angle);
    x += seg.duration * cs.c;
    y += seg.duration * cs.s;
    out.vertices.push_back({x, y});
  }
  return out;
}

const CuspWitness* RegularCuspHypothesis::find(double delta) const {
  for (const auto& w : witnesses) {
    if (w.delta == delta) return &w;
  }
  return nullptr;
}

CuspCheckResult check_regular_cusp(const AngularPath& angular,
                                   const RegularCuspHypothesis& hyp,
                                   double delta) {
  const CuspWitness* w = hyp.find(delta);
  if (w == nullptr) {
    throw std::invalid_argument("check_regular_cusp: no witness for delta");
  }
  CuspCheckResult res;
  const double b = hyp.a + kPi;
  for (std::size_t i = 0; i < angular.size(); ++i) {
    const double ang = angular.segments()[i].angle;
    if (ang < hyp.a || ang > b) {
      res.failed_condition = 1;
      res.violating_segment = i;
      res.message = "segment angle outside [a, a+pi]";
      return res;
    }
  }
  for (std::size_t i = 0; i < angular.size(); ++i) {
    const double lo = angular.segment_start(i);
    const double hi = angular.segment_start(i + 1);
    if (w->F.measure_intersection(lo, hi) <= 0.0) continue;
    const double ang = angular.segments()[i].angle;
    if (ang < w->a_delta || ang > w->b_delta) {
      res.failed_condition = 2;
      res.violating_segment = i;
      res.message = "segment meets F but angle outside [a_delta, b_delta]";
      return res;
    }
  }
  res.pass = true;
  return res;
}

ThetaTable::ThetaTable(std::vector<std::array<double, 2>> knots)
    : knots_(std::move(knots)) {
  if (knots_.size() < 2) {
    throw std::invalid_argument("ThetaTable: need at least two knots");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i][0] > knots_[i - 1][0]) || !(knots_[i][1] > knots_[i - 1][1])) {
      throw std::invalid_argument("ThetaTable: knots must be strictly increasing");
    }
  }
}

ThetaTable ThetaTable::linear(double half_length, double lo, double hi) {
  return ThetaTable({{0.0, lo}, {half_length, hi}});
}

double ThetaTable::operator()(double t) const {
  if (t <= knots_.front()[0]) return knots_.front()[1];
  if (t >= knots_.back()[0]) return knots_.back()[1];
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), std::array<double, 2>{t, 0.0},
      [](const auto& a, const auto& b) { return a[0] < b[0]; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double u = (t - lo[0]) / (hi[0] - lo[0]);
  return lo[1] + u * (hi[1] - lo[1]);
}

SingularCuspSpec::SingularCuspSpec(double L, double r, double a, double c,
                                   ThetaTable theta_table)
    : total_length(L), r(r), a(a), c(c), theta(std::move(theta_table)) {
  if (!(L > 0.0)) throw std::invalid_argument("SingularCuspSpec: L must be > 0");
  if (!(r > 0.0 && r < kPi / 4)) {
    throw std::invalid_argument("SingularCuspSpec: r must lie in (0, pi/4)");
  }
  if (!(c > 0.0 && c <= 1.0)) {
    throw std::invalid_argument("SingularCuspSpec: c must lie in (0, 1]");
  }
  if (theta.knots().front()[0] != 0.0 || theta.knots().back()[0] != L / 2 ||
      theta.knots().front()[1] != a - r || theta.knots().back()[1] != a) {
    throw std::invalid_argument(
        "SingularCuspSpec: theta must map [0, L/2] onto [a-r, a] exactly");
  }
}

AngularPath make_singular_cusp(const SingularCuspSpec& spec, int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("make_singular_cusp: resolution must be >= 2");
  }
  const double half = spec.total_length / 2;
  const double h = half / resolution;
  std::vector<Segment> segs;
  segs.reserve(2 * static_cast<std::size_t>(resolution));
  for (int j = 0; j < resolution; ++j) {
    const double mid = (j + 0.5) * h;
    segs.push_back({h, spec.theta(mid)});
  }
  for (int j = 0; j < resolution; ++j) {
    const double mid = half + (j + 0.5) * h;
    const double mirrored = spec.total_length - mid;  // in [0, L/2)
    segs.push_back({h, spec.c * (spec.theta(mirrored) - spec.a) + (spec.a - kPi)});
  }
  return AngularPath(std::move(segs));
}

AngularPath make_tree_like(double angle, double half_length) {
  return AngularPath({{half_length, angle}, {half_length, angle + kPi}});
}

}  // namespace sigscope
