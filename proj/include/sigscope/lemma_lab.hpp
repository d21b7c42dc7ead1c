// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigscope/angle_dynamics.hpp"
#include "sigscope/angular_path.hpp"
#include "sigscope/interval_set.hpp"

namespace sigscope {

enum class LemmaId {
  RangePhi,        // 2 phi stays in the open pi-window of alpha
  DeviPhi,         // deviation bound r = 2 lambda mu(alpha outside [a,b])
  CatTim,          // capture time into the eps-enlarged band
  EntryTime,       // localized per-cell entry times + aggregate wait time
  BadSet,          // measure of the bad deviation set
  Comparison,      // cusp angle vs tree-like angle on the second half
  C1Convergence,   // uniform convergence for continuous alpha
  SmallAngleEntry, // entry below eps before t0 from a far start
};

const char* lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(const std::string& name);
std::vector<LemmaId> all_lemmas();

struct LemmaHypothesis {
  LemmaId id = LemmaId::RangePhi;
  std::map<std::string, double> params;
  std::optional<AngularPath> path;  // the driver, as alpha
  double lambda = 1.0;
  double phi0 = 0.0;
  IntervalSet F1;
  IntervalSet F2;
  std::optional<SingularCuspSpec> cusp;
  int resolution = 0;
  // modulus-of-continuity table rows (h, omega(h)), increasing in h
  std::vector<std::array<double, 2>> omega_table;

  double param(const std::string& key) const;
};

struct LemmaVerdict {
  LemmaId id = LemmaId::RangePhi;
  enum class Status { Pass, Fail, Skip } status = Status::Skip;
  double predicted_bound = 0.0;
  double observed = 0.0;
  double margin = 0.0;  // positive = satisfied with room
  bool vacuous = false;
  std::string detail;
  std::string trace_ref;

  bool passed() const { return status == Status::Pass; }
  bool failed() const { return status == Status::Fail; }
  bool skipped() const { return status == Status::Skip; }
};

LemmaVerdict verify(const LemmaHypothesis& hyp);
LemmaVerdict verify_range_invariance(const LemmaHypothesis& hyp);
LemmaVerdict verify_deviation_bound(const LemmaHypothesis& hyp);
LemmaVerdict verify_capture_time(const LemmaHypothesis& hyp);
LemmaVerdict verify_entry_time_localized(const LemmaHypothesis& hyp);
LemmaVerdict verify_bad_set_measure(const LemmaHypothesis& hyp);
LemmaVerdict verify_comparison(const LemmaHypothesis& hyp);
LemmaVerdict verify_c1_convergence(const LemmaHypothesis& hyp);
LemmaVerdict verify_small_angle_entry(const LemmaHypothesis& hyp);

// Deterministic hypothesis-satisfying instance for (seed, index).
LemmaHypothesis generate_instance(LemmaId id, std::uint64_t seed,
                                  std::uint32_t index);

struct SuiteResult {
  LemmaId id;
  std::uint64_t seed = 0;
  std::uint32_t count = 0;
  std::uint32_t pass = 0, fail = 0, skip = 0, vacuous = 0;
  std::vector<LemmaVerdict> verdicts;
  // trace_ref -> trajectory CSV, for failed instances only
  std::map<std::string, std::string> failure_traces;
};

SuiteResult run_suite(LemmaId id, std::uint64_t seed, std::uint32_t count);

std::string verdict_to_json(const LemmaVerdict& v);
std::string suite_to_json(const SuiteResult& r);

// trajectory CSV dump: t, alpha, two_phi, psi, cumulative_I
std::string trajectory_csv(const AngleTrajectory& traj, std::size_t samples);

}  // namespace sigscope
