// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigscope/angular_path.hpp"
#include "sigscope/interval_set.hpp"

namespace sigscope {

// One step of d(psi)/dt = -2*lambda*sin(psi) on a constant-alpha segment,
// by the half-angle closed form tan(psi/2) = tan(psi0/2) * e^{-2 lambda t}.
// psi0 must lie in (-pi, pi]; psi0 == pi is the unstable fixed point and is
// preserved exactly. |psi| never increases and the sign is preserved.
double sine_flow_step(double psi0, double lambda, double dt);

enum class PsiClass { Zero, Frozen, Flow };

struct TrajectorySegment {
  double t_start = 0.0;
  double duration = 0.0;
  double alpha = 0.0;
  double phi_start = 0.0;  // continuous branch of phi
  double psi_start = 0.0;  // folded into (-pi, pi]
  double fold_shift = 0.0; // 2*phi - alpha == psi + fold_shift (multiple of 2 pi)
  PsiClass cls = PsiClass::Zero;
  double sign = 1.0;           // sign of psi on the segment (Flow)
  double log_tan_half = 0.0;   // log tan(|psi_start|/2)     (Flow)
  double psi_end = 0.0;
  double phi_end = 0.0;
  double seg_integral = 0.0;       // integral of cos(psi) over the segment
  double cum_integral_before = 0.0;
};

// Segment-wise closed-form solution of d(phi)/dt = lambda sin(alpha - 2 phi)
// together with the radial integral I = integral of cos(alpha - 2 phi).
// phi is continuous across breakpoints; psi is re-based and folded at each
// alpha jump, with the jump-by-pi case landing exactly on the unstable point.
class AngleTrajectory {
 public:
  double lambda = 0.0;
  double phi0 = 0.0;
  double length = 0.0;
  std::vector<TrajectorySegment> segments;
  double radial_log_integral = 0.0;  // I

  double psi_at(double t) const;       // folded
  double two_phi_at(double t) const;   // continuous branch
  double phi_at(double t) const { return two_phi_at(t) / 2; }
  double alpha_at(double t) const;
  double cumulative_integral_at(double t) const;
  double final_phi() const { return segments.back().phi_end; }

  std::size_t segment_index(double t) const;
};

AngleTrajectory propagate(const AngularPath& alpha_path, double lambda,
                          double phi0);

// lambda * I: log magnitude of the developed vector (Eq. of the radial part).
double radial_value(const AngleTrajectory& traj);

// --- exact trajectory queries used by the lemma harness -------------------

// First t in [t_from, t_to] with 2*phi(t) in [lo, hi]; in-segment crossings
// are located by inverting the half-angle closed form, never by sampling.
std::optional<double> first_two_phi_entry(const AngleTrajectory& traj,
                                          double lo, double hi, double t_from,
                                          double t_to);

// max over [t0, t1] of max(a - 2 phi, 2 phi - b); negative means the band
// held. Exact: 2 phi is monotone within each segment.
double max_two_phi_excursion(const AngleTrajectory& traj, double a, double b,
                             double t0, double t1);

// sup / min of |2 phi - alpha| over [t0, t1] (unfolded difference).
double sup_abs_deviation(const AngleTrajectory& traj, double t0, double t1);
double min_abs_deviation(const AngleTrajectory& traj, double t0, double t1);

// Lebesgue measure of {t in F inter [t0, t1] : |2 phi_t - alpha_t| > thr},
// by exact interval accounting on the closed-form trajectory.
double deviation_measure_above(const AngleTrajectory& traj, double thr,
                               const IntervalSet& F, double t0, double t1);

// --- integral lower bound --------------------------------------------------

struct Phi0Policy {
  enum class Kind { Aligned, Fixed, EndpointFree } kind = Kind::Aligned;
  double fixed_value = 0.0;  // phi0 when Fixed
  double kappa = 0.0;        // endpoint margin when EndpointFree

  static Phi0Policy aligned() { return {}; }
  static Phi0Policy fixed(double phi0) {
    return {Kind::Fixed, phi0, 0.0};
  }
  static Phi0Policy endpoint_free(double kappa) {
    return {Kind::EndpointFree, 0.0, kappa};
  }
  std::string name() const;
};

struct IntegralRow {
  double lambda;
  double integral;  // I_lambda (over the trimmed window for EndpointFree)
  double bound;     // certified lower bound (I, or I_trim - 2*kappa)
};

struct IntegralBoundReport {
  std::vector<IntegralRow> rows;
  double max_bound = 0.0;
  std::string policy;
  double kappa = 0.0;
};

// Aligned: 2 phi0 = alpha_0. Fixed: user phi0. EndpointFree: the Section 5.2.4
// relaxation; dynamics run on the trimmed path [kappa, L-kappa] started
// aligned at kappa (which realizes the "2 phi_kappa lands in the first
// window" choice), certified bound = I_trim - 2*kappa.
IntegralBoundReport integral_lower_bound(const AngularPath& alpha_path,
                                         std::span<const double> lambdas,
                                         const Phi0Policy& policy);

}  // namespace sigscope
