// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigscope/angle_dynamics.hpp"
#include "sigscope/angular_path.hpp"
#include "sigscope/sl2.hpp"

namespace sigscope {

struct SignatureRow {
  int n = 0;
  double hs = 0.0;
  double rank_one = 0.0;  // strongest rank-one certificate (symmetric grid
                          // and slot-wise ascent, both projective lower bounds)
  double log_variation_upper = 0.0;
  double normalized_hs = 0.0;
  double normalized_rank_one = 0.0;
};

struct DevelopmentRow {
  double lambda = 0.0;
  double log_norm = 0.0;
  double dev_bound = 0.0;       // log||Gamma||/lambda
  double integral = 0.0;        // I_lambda
  double integral_bound = 0.0;  // certified (I, or I_trim - 2 kappa)
};

struct CuspOffsetRow {
  double offset = 0.0;     // t2 - L/2
  double t2 = 0.0;
  double two_phi_t2 = 0.0;       // at the largest lambda
  bool push_in = false;          // 2 phi_{t2} in R2 = [a - pi - c r, a - pi]
  double lambda_push_min = 0.0;  // smallest schedule lambda with push-in, 0 if none
  double cert_bound = 0.0;       // L - 2*offset, meaningful once push_in holds
};

struct CuspReport {
  double r2_lo = 0.0, r2_hi = 0.0;
  std::vector<CuspOffsetRow> offsets;
};

struct EstimateReport {
  double true_length = 0.0;
  double headline_lower = 0.0;
  double headline_upper = 0.0;  // == true_length by unit speed
  double kappa = 0.0;
  int depth = 0;
  std::vector<SignatureRow> signature;
  std::vector<DevelopmentRow> development;
  double signature_best = 0.0;      // max over n of normalized rank-one
  double signature_last = 0.0;      // value at n = depth
  double dev_slope_last3 = 0.0;
  double gap_loglog_slope = 0.0;    // slope of log(L - bound) vs log lambda
  std::optional<CuspReport> cusp;
};

// Full pipeline on a beta-path: signatures up to `depth`, development and
// angle dynamics over the lambda schedule (dynamics on the time reversal).
// kappa > 0 activates the endpoint relaxation: certificates are computed on
// the trimmed path [kappa, L-kappa] and charged 2*kappa.
// Throws SoundnessError if any certified bound exceeds true length + 1e-9.
EstimateReport estimate_length(const AngularPath& beta_path, int depth,
                               std::span<const double> lambdas, double kappa);

// Singular-cusp pipeline (c in (0,1) strictly): verifies the push-in claim
// at each t2 = L/2 + offset and reports the per-lambda integral bounds.
// `depth` <= 0 skips the signature side.
EstimateReport estimate_singular_cusp(const SingularCuspSpec& spec,
                                      int resolution,
                                      std::span<const double> lambdas,
                                      std::span<const double> t2_offsets,
                                      int depth);

std::string estimate_to_json(const EstimateReport& rep);
std::string signature_csv(const EstimateReport& rep);
std::string development_csv(const EstimateReport& rep);

// --- Lemma 5.4 covering construction ---------------------------------------

struct CoverWindow {
  double lo = 0.0, hi = 0.0;  // open interval, covers t iff lo < t < hi
  RegularCuspHypothesis hypothesis;
};

struct Cover {
  std::vector<double> v_points;        // v_0 = 0 < v_1 < ... < v_k = L
  std::vector<double> u_points;        // u_0 = 0, u_i in (v_{i-1}, v_i)
  std::vector<std::size_t> window_index;  // window backing piece [u_{i-1}, v_i]
};

// Greedy chaining construction. Tie-breaking: among unused windows covering
// v_i, take the one with the largest right endpoint; u_i is the midpoint of
// its admissible range. Throws CoverageError naming the first uncoverable
// point.
Cover build_cover(double total_length, std::span<const CoverWindow> windows);

}  // namespace sigscope
