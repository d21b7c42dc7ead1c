// SPDX-License-Identifier: Apache-2.0
#include "sigscope/angle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigscope/angle_utils.hpp"
#include "sigscope/parallel.hpp"

namespace sigscope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log tan(m/2) for m in (0, pi); evaluated through the complement angle for
// m > pi/2 so the tangent near the pole never loses precision.
double log_tan_half(double m) {
  if (m > kPi / 2) {
    const double u = (kPi - m) / 2;
    return -std::log(std::tan(u));
  }
  const double t = std::tan(m / 2);
  return t > 0.0 ? std::log(t) : -kInf;
}

// magnitude of psi with log tan(|psi|/2) == lt
double psi_from_log_tan(double lt) {
  if (lt == -kInf) return 0.0;
  return lt > 0.0 ? kPi - 2.0 * std::atan(std::exp(-lt))
                  : 2.0 * std::atan(std::exp(lt));
}

// log(1 + e^{2 lt}), stable for any lt
double softplus2(double lt) {
  if (lt == -kInf) return 0.0;
  const double x = 2.0 * lt;
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

double sine_flow_step(double psi0, double lambda, double dt) {
  if (dt < 0.0) throw std::invalid_argument("sine_flow_step: dt must be >= 0");
  if (dt == 0.0 || psi0 == 0.0) return psi0;
  if (psi0 == kPi) return kPi;
  const double sign = psi0 < 0.0 ? -1.0 : 1.0;
  const double m = std::fabs(psi0);
  const double lt_end = log_tan_half(m) - 2.0 * lambda * dt;
  return sign * std::min(psi_from_log_tan(lt_end), m);
}

AngleTrajectory propagate(const AngularPath& alpha_path, double lambda,
                          double phi0) {
  if (!(lambda > 0.0)) throw std::invalid_argument("propagate: lambda must be > 0");
  AngleTrajectory traj;
  traj.lambda = lambda;
  traj.phi0 = phi0;
  traj.length = alpha_path.length();
  traj.segments.reserve(alpha_path.size());

  double phi = phi0;
  double cum = 0.0;
  for (std::size_t i = 0; i < alpha_path.size(); ++i) {
    const Segment& s = alpha_path.segments()[i];
    TrajectorySegment ts;
    ts.t_start = alpha_path.segment_start(i);
    ts.duration = s.duration;
    ts.alpha = s.angle;
    ts.phi_start = phi;
    const double raw = 2.0 * phi - s.angle;
    ts.psi_start = fold_angle(raw);
    ts.fold_shift = raw - ts.psi_start;
    ts.cum_integral_before = cum;

    if (ts.psi_start == 0.0) {
      ts.cls = PsiClass::Zero;
      ts.psi_end = 0.0;
      ts.seg_integral = s.duration;
    } else if (ts.psi_start == kPi) {
      ts.cls = PsiClass::Frozen;
      ts.psi_end = kPi;
      ts.seg_integral = -s.duration;
    } else {
      ts.cls = PsiClass::Flow;
      ts.sign = ts.psi_start < 0.0 ? -1.0 : 1.0;
      const double m = std::fabs(ts.psi_start);
      ts.log_tan_half = log_tan_half(m);
      const double lt_end = ts.log_tan_half - 2.0 * lambda * s.duration;
      ts.psi_end = ts.sign * std::min(psi_from_log_tan(lt_end), m);
      ts.seg_integral =
          s.duration +
          (softplus2(lt_end) - softplus2(ts.log_tan_half)) / (2.0 * lambda);
    }
    ts.phi_end = phi + (ts.psi_end - ts.psi_start) / 2.0;
    phi = ts.phi_end;
    cum += ts.seg_integral;
    traj.segments.push_back(ts);
  }
  traj.radial_log_integral = cum;
  return traj;
}

double radial_value(const AngleTrajectory& traj) {
  return traj.lambda * traj.radial_log_integral;
}

std::size_t AngleTrajectory::segment_index(double t) const {
  if (t <= segments.front().t_start) return 0;
  if (t >= length) return segments.size() - 1;
  std::size_t lo = 0, hi = segments.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (segments[mid].t_start <= t) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

namespace {

double psi_at_offset(const TrajectorySegment& seg, double lambda, double tau) {
  if (seg.cls == PsiClass::Zero) return 0.0;
  if (seg.cls == PsiClass::Frozen) return kPi;
  if (tau <= 0.0) return seg.psi_start;
  const double m = std::fabs(seg.psi_start);
  const double lt = seg.log_tan_half - 2.0 * lambda * tau;
  return seg.sign * std::min(psi_from_log_tan(lt), m);
}

double integral_at_offset(const TrajectorySegment& seg, double lambda,
                          double tau) {
  if (seg.cls == PsiClass::Zero) return tau;
  if (seg.cls == PsiClass::Frozen) return -tau;
  const double lt = seg.log_tan_half - 2.0 * lambda * tau;
  return tau + (softplus2(lt) - softplus2(seg.log_tan_half)) / (2.0 * lambda);
}

}  // namespace

double AngleTrajectory::psi_at(double t) const {
  const auto& seg = segments[segment_index(t)];
  return psi_at_offset(seg, lambda, t - seg.t_start);
}

double AngleTrajectory::two_phi_at(double t) const {
  const auto& seg = segments[segment_index(t)];
  const double psi = psi_at_offset(seg, lambda, t - seg.t_start);
  return 2.0 * seg.phi_start + (psi - seg.psi_start);
}

double AngleTrajectory::alpha_at(double t) const {
  return segments[segment_index(t)].alpha;
}

double AngleTrajectory::cumulative_integral_at(double t) const {
  const auto& seg = segments[segment_index(t)];
  return seg.cum_integral_before +
         integral_at_offset(seg, lambda, std::min(t - seg.t_start, seg.duration));
}

std::optional<double> first_two_phi_entry(const AngleTrajectory& traj,
                                          double lo, double hi, double t_from,
                                          double t_to) {
  for (const auto& seg : traj.segments) {
    const double seg_end = seg.t_start + seg.duration;
    if (seg_end <= t_from || seg.t_start >= t_to) continue;
    const double piece_lo = std::max(seg.t_start, t_from);
    const double piece_hi = std::min(seg_end, t_to);
    const double tau0 = piece_lo - seg.t_start;
    const double psi_now = psi_at_offset(seg, traj.lambda, tau0);
    const double p_now = 2.0 * seg.phi_start + (psi_now - seg.psi_start);
    if (p_now >= lo && p_now <= hi) return piece_lo;
    if (seg.cls != PsiClass::Flow) continue;  // 2*phi constant on the segment
    const double target = p_now > hi ? hi : lo;
    const double psi_target = seg.psi_start + (target - 2.0 * seg.phi_start);
    if (psi_target == 0.0) continue;  // asymptote, never reached
    if ((psi_target < 0.0) != (seg.sign < 0.0)) continue;
    if (std::fabs(psi_target) > std::fabs(psi_now)) continue;
    const double tau_star =
        (seg.log_tan_half - log_tan_half(std::fabs(psi_target))) /
        (2.0 * traj.lambda);
    if (tau_star >= tau0 && tau_star <= piece_hi - seg.t_start) {
      return seg.t_start + tau_star;
    }
  }
  return std::nullopt;
}

namespace {

// visit the endpoint values of 2*phi (and |2 phi - alpha|) on every segment
// piece overlapping [t0, t1]: 2*phi is monotone inside a segment, so the
// extremes over a piece are attained at its ends.
template <typename Fn>
void for_each_piece_endpoint(const AngleTrajectory& traj, double t0, double t1,
                             Fn&& fn) {
  for (const auto& seg : traj.segments) {
    const double seg_end = seg.t_start + seg.duration;
    if (seg_end <= t0 || seg.t_start >= t1) continue;
    const double lo = std::max(seg.t_start, t0);
    const double hi = std::min(seg_end, t1);
    for (double t : {lo, hi}) {
      const double psi = psi_at_offset(seg, traj.lambda, t - seg.t_start);
      const double two_phi = 2.0 * seg.phi_start + (psi - seg.psi_start);
      const double dev = std::fabs(psi + seg.fold_shift);
      fn(two_phi, dev);
    }
  }
}

}  // namespace

double max_two_phi_excursion(const AngleTrajectory& traj, double a, double b,
                             double t0, double t1) {
  double worst = -kInf;
  for_each_piece_endpoint(traj, t0, t1, [&](double two_phi, double) {
    worst = std::max(worst, std::max(a - two_phi, two_phi - b));
  });
  return worst;
}

double sup_abs_deviation(const AngleTrajectory& traj, double t0, double t1) {
  double sup = 0.0;
  for_each_piece_endpoint(traj, t0, t1,
                          [&](double, double dev) { sup = std::max(sup, dev); });
  return sup;
}

double min_abs_deviation(const AngleTrajectory& traj, double t0, double t1) {
  double low = kInf;
  for_each_piece_endpoint(traj, t0, t1,
                          [&](double, double dev) { low = std::min(low, dev); });
  return low;
}

double deviation_measure_above(const AngleTrajectory& traj, double thr,
                               const IntervalSet& F, double t0, double t1) {
  double measure = 0.0;
  for (const auto& seg : traj.segments) {
    const double seg_end = seg.t_start + seg.duration;
    if (seg_end <= t0 || seg.t_start >= t1) continue;
    const double lo = std::max(seg.t_start, t0);
    const double hi = std::min(seg_end, t1);
    if (seg.fold_shift != 0.0) {
      // |2 phi - alpha| >= 2 pi - pi > thr for any thr < pi: whole piece bad
      measure += F.measure_intersection(lo, hi);
      continue;
    }
    double bad_end;  // |psi| decays, so the bad set is a prefix of the piece
    if (seg.cls == PsiClass::Zero) {
      bad_end = lo;
    } else if (seg.cls == PsiClass::Frozen) {
      bad_end = kPi > thr ? hi : lo;
    } else {
      const double m = std::fabs(seg.psi_start);
      if (m <= thr) {
        bad_end = lo;
      } else {
        const double tau_star =
            (seg.log_tan_half - log_tan_half(thr)) / (2.0 * traj.lambda);
        bad_end = std::min(hi, std::max(lo, seg.t_start + tau_star));
      }
    }
    if (bad_end > lo) measure += F.measure_intersection(lo, bad_end);
  }
  return measure;
}

std::string Phi0Policy::name() const {
  switch (kind) {
    case Kind::Aligned: return "aligned";
    case Kind::Fixed: return "fixed";
    case Kind::EndpointFree: return "endpoint_free";
  }
  return "?";
}

IntegralBoundReport integral_lower_bound(const AngularPath& alpha_path,
                                         std::span<const double> lambdas,
                                         const Phi0Policy& policy) {
  if (lambdas.empty()) {
    throw std::invalid_argument("integral_lower_bound: empty schedule");
  }
  const double L = alpha_path.length();
  const AngularPath* run_path = &alpha_path;
  AngularPath trimmed = alpha_path;  // reused only for EndpointFree
  double correction = 0.0;
  if (policy.kind == Phi0Policy::Kind::EndpointFree) {
    if (!(policy.kappa > 0.0 && policy.kappa < L / 2)) {
      throw std::invalid_argument(
          "integral_lower_bound: endpoint_free needs 0 < kappa < L/2");
    }
    trimmed = alpha_path.restricted(policy.kappa, L - policy.kappa);
    run_path = &trimmed;
    correction = 2.0 * policy.kappa;
  }
  const double phi0 = policy.kind == Phi0Policy::Kind::Fixed
                          ? policy.fixed_value
                          : run_path->segments().front().angle / 2.0;

  IntegralBoundReport rep;
  rep.policy = policy.name();
  rep.kappa = policy.kappa;
  rep.rows.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    const AngleTrajectory traj = propagate(*run_path, lambdas[i], phi0);
    rep.rows[i] = {lambdas[i], traj.radial_log_integral,
                   traj.radial_log_integral - correction};
  });
  rep.max_bound = rep.rows[0].bound;
  for (const auto& row : rep.rows) rep.max_bound = std::max(rep.max_bound, row.bound);
  return rep;
}

}  // namespace sigscope
