// SPDX-License-Identifier: Apache-2.0
#include "sigscope/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigscope/angle_utils.hpp"
#include "sigscope/emit.hpp"
#include "sigscope/parallel.hpp"
#include "sigscope/rng.hpp"

namespace sigscope {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelSlack = 1e-9;   // "observed <= predicted" comparison slack
constexpr double kAbsSlack = 1e-15;
}  // namespace

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::RangePhi: return "RangePhi";
    case LemmaId::DeviPhi: return "DeviPhi";
    case LemmaId::CatTim: return "CatTim";
    case LemmaId::EntryTime: return "EntryTime";
    case LemmaId::BadSet: return "BadSet";
    case LemmaId::Comparison: return "Comparison";
    case LemmaId::C1Convergence: return "C1Convergence";
    case LemmaId::SmallAngleEntry: return "SmallAngleEntry";
  }
  return "?";
}

std::optional<LemmaId> lemma_from_name(const std::string& name) {
  for (LemmaId id : all_lemmas()) {
    if (name == lemma_name(id)) return id;
  }
  return std::nullopt;
}

std::vector<LemmaId> all_lemmas() {
  return {LemmaId::RangePhi,   LemmaId::DeviPhi,      LemmaId::CatTim,
          LemmaId::EntryTime,  LemmaId::BadSet,       LemmaId::Comparison,
          LemmaId::C1Convergence, LemmaId::SmallAngleEntry};
}

double LemmaHypothesis::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("LemmaHypothesis: missing parameter " + key);
  }
  return it->second;
}

namespace {

LemmaVerdict skip(const LemmaHypothesis& hyp, const std::string& why) {
  LemmaVerdict v;
  v.id = hyp.id;
  v.status = LemmaVerdict::Status::Skip;
  v.detail = why;
  return v;
}

LemmaVerdict judge(const LemmaHypothesis& hyp, double predicted, double observed,
                   bool pass, const std::string& detail) {
  LemmaVerdict v;
  v.id = hyp.id;
  v.status = pass ? LemmaVerdict::Status::Pass : LemmaVerdict::Status::Fail;
  v.predicted_bound = predicted;
  v.observed = observed;
  v.margin = predicted - observed;
  v.detail = detail;
  return v;
}

bool leq_with_slack(double observed, double predicted) {
  return observed <= predicted * (1.0 + kRelSlack) + kAbsSlack;
}

double exact_measure_outside(const AngularPath& path, double lo, double hi) {
  double m = 0.0;
  for (const auto& s : path.segments()) {
    if (s.angle < lo || s.angle > hi) m += s.duration;
  }
  return m;
}

bool all_angles_within(const AngularPath& path, double lo, double hi) {
  for (const auto& s : path.segments()) {
    if (s.angle < lo || s.angle > hi) return false;
  }
  return true;
}

struct Cell {
  double lo, hi;
};

// Partition the components of F1 into ~n equal-length cells, at most n total.
std::vector<Cell> partition_cells(const IntervalSet& F1, int n) {
  const auto& comps = F1.intervals();
  const double total = F1.measure();
  std::vector<int> alloc(comps.size());
  int used = 0;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const double len = comps[j][1] - comps[j][0];
    alloc[j] = std::max(1, static_cast<int>(std::floor(n * len / total)));
    used += alloc[j];
  }
  while (used > n) {
    std::size_t big = 0;
    for (std::size_t j = 1; j < comps.size(); ++j) {
      if (alloc[j] > alloc[big]) big = j;
    }
    if (alloc[big] <= 1) break;
    --alloc[big];
    --used;
  }
  std::vector<Cell> cells;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const double lo = comps[j][0];
    const double len = comps[j][1] - comps[j][0];
    for (int i = 0; i < alloc[j]; ++i) {
      cells.push_back({lo + len * i / alloc[j], lo + len * (i + 1) / alloc[j]});
    }
  }
  return cells;
}

// inf/sup of segment angles meeting F2 within the cell with positive measure
struct Band {
  double lo = kInf, hi = -kInf;
  bool empty() const { return lo > hi; }
};

Band cell_band(const AngularPath& path, const IntervalSet& F2, const Cell& cell) {
  Band band;
  const IntervalSet local = F2.intersect(cell.lo, cell.hi);
  if (local.empty()) return band;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double s0 = path.segment_start(i);
    const double s1 = path.segment_start(i + 1);
    double m = 0.0;
    for (const auto& iv : local.intervals()) {
      const double a = std::max(iv[0], s0);
      const double b = std::min(iv[1], s1);
      if (b > a) m += b - a;
    }
    if (m > 0.0) {
      band.lo = std::min(band.lo, path.segments()[i].angle);
      band.hi = std::max(band.hi, path.segments()[i].angle);
    }
  }
  return band;
}

}  // namespace

LemmaVerdict verify_range_invariance(const LemmaHypothesis& hyp) {
  const double a = hyp.param("a");
  const double b = a + kPi;
  if (!hyp.path) return skip(hyp, "no path");
  if (!all_angles_within(*hyp.path, a, b)) return skip(hyp, "alpha leaves [a, a+pi]");
  const double two_phi0 = 2.0 * hyp.phi0;
  if (!(two_phi0 > a && two_phi0 < b)) return skip(hyp, "2*phi0 not in (a, a+pi)");

  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);
  const double observed = max_two_phi_excursion(traj, a, b, 0.0, traj.length);
  // open interval: the excursion must stay strictly negative
  return judge(hyp, 0.0, observed, observed < 0.0,
               "max excursion beyond (a, a+pi)");
}

LemmaVerdict verify_deviation_bound(const LemmaHypothesis& hyp) {
  const double a = hyp.param("a");
  const double b = hyp.param("b");
  if (!hyp.path) return skip(hyp, "no path");
  if (!(b - a > 0.0 && b - a < kPi)) return skip(hyp, "need 0 < b-a < pi");
  const double two_phi0 = 2.0 * hyp.phi0;
  if (!(two_phi0 >= a && two_phi0 <= b)) return skip(hyp, "2*phi0 not in [a, b]");
  const double r = 2.0 * hyp.lambda * exact_measure_outside(*hyp.path, a, b);
  if (!(b - a + r < kPi)) return skip(hyp, "b - a + r >= pi");

  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);
  const double observed =
      max_two_phi_excursion(traj, a - r, b + r, 0.0, traj.length);
  return judge(hyp, 0.0, observed, observed <= 0.0,
               "max excursion beyond [a-r, b+r], r = " + format_double(r));
}

LemmaVerdict verify_capture_time(const LemmaHypothesis& hyp) {
  const double a = hyp.param("a");
  const double b = hyp.param("b");
  const double c = hyp.param("c");
  const double d = hyp.param("d");
  const double eps = hyp.param("eps");
  if (!hyp.path) return skip(hyp, "no path");
  if (!(b - a > 0.0 && b - a < kPi)) return skip(hyp, "need 0 < b-a < pi");
  if (!(eps > 0.0 && eps < kPi - (b - a))) return skip(hyp, "eps constraint");
  if (!(c <= d && c - eps > a && d + eps < b)) {
    return skip(hyp, "[c-eps, d+eps] not inside (a, b)");
  }
  if (!all_angles_within(*hyp.path, a, b)) return skip(hyp, "alpha leaves [a, b]");
  const double two_phi0 = 2.0 * hyp.phi0;
  if (!(two_phi0 > a && two_phi0 < b)) return skip(hyp, "2*phi0 not in (a, b)");

  const double mu_bc = exact_measure_outside(*hyp.path, c, d);
  const double sin_eps = std::sin(eps);
  const double predicted = (b - a) / (2.0 * hyp.lambda * sin_eps) +
                           (1.0 + sin_eps) / sin_eps * mu_bc;

  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);
  const auto entry =
      first_two_phi_entry(traj, c - eps, d + eps, 0.0, traj.length);
  const double observed = entry.value_or(traj.length);
  LemmaVerdict v = judge(hyp, predicted, observed,
                         leq_with_slack(observed, predicted),
                         entry ? "entry time" : "never entered; observed = L");
  v.vacuous = !entry.has_value() && v.passed();
  return v;
}

LemmaVerdict verify_entry_time_localized(const LemmaHypothesis& hyp) {
  const double a = hyp.param("a");
  const double b = a + kPi;
  const double a_delta = hyp.param("a_delta");
  const double b_delta = hyp.param("b_delta");
  const double eps = hyp.param("eps");
  if (!hyp.path) return skip(hyp, "no path");
  if (hyp.F1.empty()) return skip(hyp, "empty F1");
  if (!(eps > 0.0 &&
        eps < std::min({a_delta - a, b - b_delta, kPi / 3}))) {
    return skip(hyp, "eps constraint");
  }
  if (!all_angles_within(*hyp.path, a, b)) return skip(hyp, "alpha leaves [a, a+pi]");
  const double two_phi0 = 2.0 * hyp.phi0;
  if (!(two_phi0 > a && two_phi0 < b)) return skip(hyp, "2*phi0 not in (a, b)");

  const double sin_eps = std::sin(eps);
  const int n =
      static_cast<int>(std::floor(eps * sin_eps * hyp.lambda)) + 1;
  const std::vector<Cell> cells = partition_cells(hyp.F1, n);
  const IntervalSet F1_minus_F2 = hyp.F1.subtract(hyp.F2);

  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);

  double sum_sigma = 0.0;
  double worst_margin = kInf;
  int included = 0;
  bool all_cells_ok = true;
  bool any_never = false;
  for (const auto& cell : cells) {
    const Band band = cell_band(*hyp.path, hyp.F2, cell);
    if (band.empty()) continue;  // no F2 mass: no paper-defined target band
    ++included;
    const auto entry = first_two_phi_entry(traj, band.lo - eps, band.hi + eps,
                                           cell.lo, cell.hi);
    const double sigma = (entry ? *entry : cell.hi) - cell.lo;
    if (!entry) any_never = true;
    const double bad_mass = [&] {
      double m = 0.0;
      for (const auto& iv : F1_minus_F2.intervals()) {
        const double lo = std::max(iv[0], cell.lo);
        const double hi = std::min(iv[1], cell.hi);
        if (hi > lo) m += hi - lo;
      }
      return m;
    }();
    const double cell_bound = kPi / (2.0 * hyp.lambda * sin_eps) +
                              (1.0 + sin_eps) / sin_eps * bad_mass;
    if (!leq_with_slack(sigma, cell_bound)) all_cells_ok = false;
    worst_margin = std::min(worst_margin, cell_bound - sigma);
    sum_sigma += sigma;
  }
  if (included == 0) return skip(hyp, "no cell carries F2 mass");

  const double eta_used = F1_minus_F2.measure();
  const double aggregate_bound =
      kPi * eps / 2.0 + (1.0 + sin_eps) / sin_eps * eta_used;
  const bool aggregate_ok = leq_with_slack(sum_sigma, aggregate_bound);

  LemmaVerdict v = judge(
      hyp, aggregate_bound, sum_sigma, all_cells_ok && aggregate_ok,
      "cells = " + std::to_string(included) +
          ", worst cell margin = " + format_double(worst_margin));
  v.vacuous = any_never && v.passed();
  return v;
}

LemmaVerdict verify_bad_set_measure(const LemmaHypothesis& hyp) {
  const double a = hyp.param("a");
  const double b = a + kPi;
  const double a_delta = hyp.param("a_delta");
  const double b_delta = hyp.param("b_delta");
  const double eps = hyp.param("eps");
  const double M = hyp.param("M");
  const double s = hyp.params.count("s") ? hyp.param("s") : 0.0;
  if (!hyp.path) return skip(hyp, "no path");
  if (hyp.F1.empty()) return skip(hyp, "empty F1");
  if (!(eps > 0.0 &&
        eps < std::min({a_delta - a, b - b_delta, kPi / 3}))) {
    return skip(hyp, "eps constraint");
  }
  if (!all_angles_within(*hyp.path, a, b)) return skip(hyp, "alpha leaves [a, a+pi]");
  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);
  const double two_phi_s = traj.two_phi_at(s);
  if (!(two_phi_s > a && two_phi_s < b)) return skip(hyp, "2*phi_s not in (a, b)");

  const double sin_eps = std::sin(eps);
  const double eta_used = hyp.F1.subtract(hyp.F2).measure();
  const double thr = 2.0 * eps + 2.0 * M * eta_used / (eps * sin_eps);
  if (!(thr < kPi / 2)) return skip(hyp, "2 eps + 2 M eta/(eps sin eps) >= pi/2");

  // lambda must be large enough that every cell band is narrower than eps
  // (the content of the corollary's Lambda(delta, eta, eps, M)).
  const int n =
      static_cast<int>(std::floor(eps * sin_eps * hyp.lambda)) + 1;
  for (const auto& cell : partition_cells(hyp.F1, n)) {
    const Band band = cell_band(*hyp.path, hyp.F2, cell);
    if (!band.empty() && !(band.hi - band.lo < eps)) {
      return skip(hyp, "lambda below mesh threshold: a cell band reaches eps");
    }
  }

  const double L = hyp.path->length();
  const double predicted =
      kPi * eps / 2.0 + (1.0 + sin_eps) / sin_eps * eta_used + L / M;
  const double observed = deviation_measure_above(traj, thr, hyp.F2, s, L);
  return judge(hyp, predicted, observed, leq_with_slack(observed, predicted),
               "threshold = " + format_double(thr) +
                   ", eta_used = " + format_double(eta_used));
}

LemmaVerdict verify_comparison(const LemmaHypothesis& hyp) {
  if (!hyp.cusp) return skip(hyp, "no cusp spec");
  const SingularCuspSpec& spec = *hyp.cusp;
  if (!(spec.c > 0.0 && spec.c < 1.0)) return skip(hyp, "c not in (0, 1)");
  const int res = hyp.resolution > 0 ? hyp.resolution : 1000;

  const AngularPath cusp = make_singular_cusp(spec, res);
  const SingularCuspSpec tree_spec(spec.total_length, spec.r, spec.a, 1.0,
                                   spec.theta);
  const AngularPath tree = make_singular_cusp(tree_spec, res);

  const double phi0 = cusp.segments().front().angle / 2.0;
  const AngleTrajectory tc = propagate(cusp, hyp.lambda, phi0);
  const AngleTrajectory tt = propagate(tree, hyp.lambda, phi0);

  const double L = spec.total_length;
  const std::size_t grid = std::max<std::size_t>(2000, 2 * static_cast<std::size_t>(res));
  double comparison = -kInf;
  double reversal = 0.0;
  for (std::size_t j = 0; j <= grid; ++j) {
    const double t = L / 2 + (L / 2) * static_cast<double>(j) / grid;
    comparison = std::max(comparison, (tc.two_phi_at(t) - tt.two_phi_at(t)) / 2.0);
    reversal = std::max(
        reversal, std::fabs(tt.two_phi_at(t) - tt.two_phi_at(L - t)) / 2.0);
  }
  const double predicted = 1e-10;
  const double observed = std::max(comparison, reversal);
  return judge(hyp, predicted, observed,
               comparison <= predicted && reversal <= predicted,
               "max(phi - psi) = " + format_double(comparison) +
                   ", reversal identity error = " + format_double(reversal));
}

namespace {

// largest tabulated h with omega(h) < eps
std::optional<double> table_scale_for(const std::vector<std::array<double, 2>>& table,
                                      double eps) {
  std::optional<double> best;
  for (const auto& row : table) {
    if (row[1] < eps && (!best || row[0] > *best)) best = row[0];
  }
  return best;
}

}  // namespace

LemmaVerdict verify_c1_convergence(const LemmaHypothesis& hyp) {
  const double eps = hyp.param("eps");
  const double t0 = hyp.params.count("t0") ? hyp.param("t0") : 0.0;
  const double kappa = hyp.params.count("kappa") ? hyp.param("kappa") : 0.0;
  const double omega_grid = hyp.param("omega_grid");
  const double norm_alpha = hyp.param("norm_alpha");
  if (!hyp.path) return skip(hyp, "no path");
  if (!(eps > 0.0 && eps < kPi / 4)) return skip(hyp, "need eps in (0, pi/4)");
  if (kappa >= kPi) return skip(hyp, "kappa >= pi");
  const auto h = table_scale_for(hyp.omega_table, eps);
  if (!h) return skip(hyp, "no modulus row below eps");

  const double alpha0 = hyp.path->segments().front().angle;
  if (std::fabs(2.0 * hyp.phi0 - alpha0) > kappa + kAbsSlack) {
    return skip(hyp, "|2 phi0 - alpha_0| exceeds kappa");
  }
  const double sin_eps = std::sin(eps);
  double Lambda = norm_alpha / (*h * sin_eps);
  if (kappa > 0.0) {
    const double delta = hyp.param("delta");
    if (!(delta > 0.0 && delta <= t0)) return skip(hyp, "delta not in (0, t0]");
    Lambda = std::max(Lambda,
                      (2.0 * norm_alpha + kappa) / (2.0 * delta * sin_eps));
  }
  if (!(hyp.lambda > Lambda)) return skip(hyp, "lambda below Lambda");

  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);
  const double L = traj.length;
  const double predicted = 2.0 * eps + omega_grid;
  const double observed = sup_abs_deviation(traj, t0, L);
  bool pass = leq_with_slack(observed, predicted);
  std::string detail = "Lambda = " + format_double(Lambda) +
                       ", lambda = " + format_double(hyp.lambda);
  if (kappa > 0.0 && t0 > 0.0) {
    const double entry = min_abs_deviation(traj, 0.0, t0);
    pass = pass && entry < eps + omega_grid;
    detail += ", entry min = " + format_double(entry);
  }
  return judge(hyp, predicted, observed, pass, detail);
}

LemmaVerdict verify_small_angle_entry(const LemmaHypothesis& hyp) {
  const double eps = hyp.param("eps");
  const double t0 = hyp.param("t0");
  const double kappa = hyp.param("kappa");
  const double kappa_prime = hyp.param("kappa_prime");
  const double delta = hyp.param("delta");
  const double omega_delta = hyp.param("omega_delta");
  const double omega_grid = hyp.param("omega_grid");
  const double norm_alpha = hyp.param("norm_alpha");
  if (!hyp.path) return skip(hyp, "no path");
  if (!(kappa > 0.0 && kappa < kPi)) return skip(hyp, "kappa not in (0, pi)");
  if (!(kappa_prime > kappa && kappa_prime < kPi)) {
    return skip(hyp, "kappa' not in (kappa, pi)");
  }
  if (!(delta > 0.0 && delta <= t0)) return skip(hyp, "delta not in (0, t0]");
  if (!(omega_delta < kappa_prime - kappa)) {
    return skip(hyp, "omega(delta) >= kappa' - kappa");
  }
  const double alpha0 = hyp.path->segments().front().angle;
  if (std::fabs(2.0 * hyp.phi0 - alpha0) > kappa + kAbsSlack) {
    return skip(hyp, "|2 phi0 - alpha_0| exceeds kappa");
  }
  const double sin_eps = std::sin(eps);
  const double Lambda = (2.0 * norm_alpha + kappa) / (2.0 * delta * sin_eps);
  if (!(hyp.lambda > Lambda)) return skip(hyp, "lambda below Lambda");

  const AngleTrajectory traj = propagate(*hyp.path, hyp.lambda, hyp.phi0);
  const double predicted = eps + omega_grid;
  const double observed = min_abs_deviation(traj, 0.0, t0);
  return judge(hyp, predicted, observed, observed < predicted,
               "Lambda = " + format_double(Lambda));
}

LemmaVerdict verify(const LemmaHypothesis& hyp) {
  switch (hyp.id) {
    case LemmaId::RangePhi: return verify_range_invariance(hyp);
    case LemmaId::DeviPhi: return verify_deviation_bound(hyp);
    case LemmaId::CatTim: return verify_capture_time(hyp);
    case LemmaId::EntryTime: return verify_entry_time_localized(hyp);
    case LemmaId::BadSet: return verify_bad_set_measure(hyp);
    case LemmaId::Comparison: return verify_comparison(hyp);
    case LemmaId::C1Convergence: return verify_c1_convergence(hyp);
    case LemmaId::SmallAngleEntry: return verify_small_angle_entry(hyp);
  }
  throw std::invalid_argument("verify: unknown lemma id");
}

// ---------------------------------------------------------------------------
// instance generators
// ---------------------------------------------------------------------------

namespace {

LemmaHypothesis gen_range_phi(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::RangePhi;
  const double a = rng.uniform(-3.0, 3.0);
  const int nseg = rng.uniform_int(2, 20);
  std::vector<Segment> segs;
  for (int i = 0; i < nseg; ++i) {
    segs.push_back({rng.uniform(0.02, 0.4), a + rng.uniform(1e-3, kPi - 1e-3)});
  }
  hyp.path = AngularPath(std::move(segs));
  hyp.lambda = rng.log_uniform(0.5, 300.0);
  hyp.phi0 = (a + rng.uniform(0.01, kPi - 0.01)) / 2.0;
  hyp.params["a"] = a;
  return hyp;
}

LemmaHypothesis gen_devi_phi(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::DeviPhi;
  const double a = rng.uniform(-3.0, 3.0);
  const double w = rng.uniform(0.3, 2.8);
  const double b = a + w;
  hyp.lambda = rng.log_uniform(1.0, 100.0);
  const double budget = (kPi - w) - 0.05;
  const double mu_bad = rng.uniform(0.1, 0.8) * budget / (2.0 * hyp.lambda);

  std::vector<Segment> segs;
  const int ngood = rng.uniform_int(4, 12);
  for (int i = 0; i < ngood; ++i) {
    segs.push_back({rng.uniform(0.05, 0.4), rng.uniform(a + 1e-3, b - 1e-3)});
  }
  const int nbad = rng.uniform_int(1, 3);
  double weights[3], wsum = 0.0;
  for (int i = 0; i < nbad; ++i) wsum += weights[i] = rng.uniform(0.2, 1.0);
  for (int i = 0; i < nbad; ++i) {
    const double dur = mu_bad * weights[i] / wsum;
    const double angle = rng.bernoulli(0.5) ? rng.uniform(b + 0.05, b + 1.0)
                                            : rng.uniform(a - 1.0, a - 0.05);
    const std::size_t pos = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(segs.size())));
    segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(pos), {dur, angle});
  }
  hyp.path = AngularPath(std::move(segs));
  hyp.phi0 = (a + w * rng.uniform(0.02, 0.98)) / 2.0;
  hyp.params["a"] = a;
  hyp.params["b"] = b;
  return hyp;
}

LemmaHypothesis gen_cat_tim(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::CatTim;
  const double a = rng.uniform(-3.0, 3.0);
  const double w = rng.uniform(0.6, 2.6);
  const double b = a + w;
  const double eps_max = std::min({0.45, 0.8 * (kPi - w), (w - 0.35) / 2.0});
  const double eps = rng.uniform(0.08, std::max(0.081, eps_max));
  const double lo = a + eps + 0.02;
  const double hi = b - eps - 0.02;
  const double c = rng.uniform(lo, hi - 0.05);
  const double d = rng.uniform(c, hi);
  hyp.lambda = rng.log_uniform(2.0, 300.0);

  std::vector<Segment> segs;
  const int nseg = rng.uniform_int(6, 20);
  for (int i = 0; i < nseg; ++i) {
    double angle;
    if (rng.bernoulli(0.85)) {
      angle = rng.uniform(c, d);
    } else if (rng.bernoulli(0.5) && d + 2e-3 < b) {
      angle = rng.uniform(d + 1e-3, b - 1e-3);
    } else {
      angle = rng.uniform(a + 1e-3, c - 1e-3);
    }
    segs.push_back({rng.uniform(0.02, 0.3), angle});
  }
  hyp.path = AngularPath(std::move(segs));

  const double room_above = b - (d + eps);
  const double room_below = (c - eps) - a;
  double two_phi0;
  if (room_above >= room_below) {
    two_phi0 = rng.uniform(d + eps + 0.25 * room_above, b - 0.1 * room_above);
  } else {
    two_phi0 = rng.uniform(a + 0.1 * room_below, c - eps - 0.25 * room_below);
  }
  hyp.phi0 = two_phi0 / 2.0;
  hyp.params["a"] = a;
  hyp.params["b"] = b;
  hyp.params["c"] = c;
  hyp.params["d"] = d;
  hyp.params["eps"] = eps;
  return hyp;
}

struct LocalizedSetup {
  AngularPath path;
  IntervalSet F1, F2;
  double a, a_delta, b_delta, eps, delta, rho, norm_alpha;
};

// Shared construction for the EntryTime / BadSet suites: two F1 components,
// a slowly varying wave on F2, wild angles on the exceptional sets.
LocalizedSetup gen_localized(Rng& rng, double eps_cap) {
  const double a = rng.uniform(-3.0, 3.0);
  const double b = a + kPi;
  const double gap1 = rng.uniform(0.3, 0.7);
  const double gap2 = rng.uniform(0.3, 0.7);
  const double a_delta = a + gap1;
  const double b_delta = b - gap2;
  const double eps =
      rng.uniform(0.08, 0.9 * std::min({gap1, gap2, kPi / 3, eps_cap}));
  const double L = rng.uniform(1.5, 3.5);

  const double delta = rng.uniform(0.05, 0.15);
  const double gapF = rng.uniform(0.3, 0.9) * delta;
  const double p = rng.uniform(0.3, 0.6) * L;
  const IntervalSet F1({{0.0, p}, {p + gapF, L}});

  const double mid = (a_delta + b_delta) / 2.0;
  const double amp = rng.uniform(0.25, 0.45) * (b_delta - a_delta) / 2.0;
  const double freq = rng.uniform(0.6, 2.0);
  const double phase = rng.uniform(0.0, kTwoPi);
  auto wave = [=](double t) { return mid + amp * std::sin(freq * t + phase); };
  const double rate = amp * freq;
  const double rho = 0.9 * eps / rate;

  const double eta_gap = rng.uniform(0.4, 0.9) * rng.uniform(0.002, 0.02);
  const double q = rng.uniform(0.1 * p, 0.8 * p);
  const IntervalSet F2 = F1.subtract(IntervalSet::single(q, q + eta_gap));

  // timeline pieces in order; segment boundaries align with set boundaries
  struct Piece {
    double lo, hi;
    bool wild;
  };
  std::vector<Piece> pieces = {{0.0, q, false},
                               {q, q + eta_gap, true},
                               {q + eta_gap, p, false},
                               {p, p + gapF, true},
                               {p + gapF, L, false}};
  const double step = std::min(rho / 3.0, 0.04);
  std::vector<Segment> segs;
  double norm_alpha = 0.0;
  for (const auto& piece : pieces) {
    if (!(piece.hi > piece.lo)) continue;
    if (piece.wild) {
      const double angle = rng.uniform(a + 0.01, b - 0.01);
      segs.push_back({piece.hi - piece.lo, angle});
      norm_alpha = std::max(norm_alpha, std::fabs(angle));
    } else {
      const int nsteps =
          std::max(1, static_cast<int>(std::ceil((piece.hi - piece.lo) / step)));
      const double h = (piece.hi - piece.lo) / nsteps;
      for (int i = 0; i < nsteps; ++i) {
        const double angle = wave(piece.lo + (i + 0.5) * h);
        segs.push_back({h, angle});
        norm_alpha = std::max(norm_alpha, std::fabs(angle));
      }
    }
  }
  return {AngularPath(std::move(segs)), F1,     F2,  a,
          a_delta,                       b_delta, eps, delta,
          rho,                           norm_alpha};
}

LemmaHypothesis gen_entry_time(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::EntryTime;
  LocalizedSetup setup = gen_localized(rng, 0.35);
  const double sin_eps = std::sin(setup.eps);
  const double lambda_mesh =
      setup.F1.measure() / (setup.rho * setup.eps * sin_eps);
  hyp.lambda = lambda_mesh * rng.uniform(1.5, 4.0);
  hyp.phi0 = rng.uniform(setup.a + 0.05, setup.a + kPi - 0.05) / 2.0;
  hyp.params["a"] = setup.a;
  hyp.params["a_delta"] = setup.a_delta;
  hyp.params["b_delta"] = setup.b_delta;
  hyp.params["eps"] = setup.eps;
  hyp.params["delta"] = setup.delta;
  hyp.F1 = setup.F1;
  hyp.F2 = setup.F2;
  hyp.path = std::move(setup.path);
  return hyp;
}

LemmaHypothesis gen_bad_set(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::BadSet;
  LocalizedSetup setup = gen_localized(rng, 0.3);
  const double sin_eps = std::sin(setup.eps);
  const double M = rng.uniform(15.0, 60.0);
  // shrink the F2 gap until the threshold ladder 2eps + 2M eta/(eps sin eps)
  // stays below pi/2 with room
  const double eta_cap =
      0.8 * (0.9 * kPi / 2 - 2.0 * setup.eps) * setup.eps * sin_eps / (2.0 * M);
  IntervalSet F2 = setup.F2;
  const double eta_now = setup.F1.subtract(F2).measure();
  if (eta_now > eta_cap) {
    // rebuild the gap at the cap: keep the same location, shorter
    const auto gap = setup.F1.subtract(F2).intervals().front();
    F2 = setup.F1.subtract(IntervalSet::single(gap[0], gap[0] + eta_cap));
  }
  const double lambda_mesh =
      setup.F1.measure() / (setup.rho * setup.eps * sin_eps);
  const double lambda_c1 = 10.0 * setup.norm_alpha / (setup.rho * sin_eps);
  hyp.lambda = std::max(1.5 * lambda_mesh, lambda_c1) * rng.uniform(1.0, 2.5);
  hyp.phi0 = rng.uniform(setup.a + 0.05, setup.a + kPi - 0.05) / 2.0;
  hyp.params["a"] = setup.a;
  hyp.params["a_delta"] = setup.a_delta;
  hyp.params["b_delta"] = setup.b_delta;
  hyp.params["eps"] = setup.eps;
  hyp.params["delta"] = setup.delta;
  hyp.params["M"] = M;
  hyp.params["s"] = 0.0;
  hyp.F1 = setup.F1;
  hyp.F2 = std::move(F2);
  hyp.path = std::move(setup.path);
  return hyp;
}

LemmaHypothesis gen_comparison(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::Comparison;
  const double a = rng.uniform(-2.0, 2.0);
  const double r = rng.uniform(0.05, kPi / 4 - 0.02);
  const double c = rng.uniform(0.1, 0.9);
  const double L = rng.uniform(0.8, 2.5);
  std::vector<std::array<double, 2>> knots;
  knots.push_back({0.0, a - r});
  const int inner = rng.uniform_int(0, 3);
  std::vector<double> ts, vs;
  for (int i = 0; i < inner; ++i) {
    ts.push_back(rng.uniform(0.05, 0.95));
    vs.push_back(rng.uniform(0.05, 0.95));
  }
  std::sort(ts.begin(), ts.end());
  std::sort(vs.begin(), vs.end());
  for (int i = 0; i < inner; ++i) {
    knots.push_back({ts[static_cast<std::size_t>(i)] * L / 2,
                     a - r + vs[static_cast<std::size_t>(i)] * r});
  }
  knots.push_back({L / 2, a});
  hyp.cusp = SingularCuspSpec(L, r, a, c, ThetaTable(std::move(knots)));
  hyp.resolution = rng.uniform_int(100, 800);
  hyp.lambda = rng.log_uniform(0.5, 200.0);
  return hyp;
}

struct WaveSetup {
  AngularPath path;
  double norm_alpha, omega_grid, amp, freq, length;
};

WaveSetup gen_wave(Rng& rng) {
  const double amp = rng.uniform(0.3, 1.0);
  const double freq = rng.uniform(0.5, 2.0);
  const double phase = rng.uniform(0.0, kTwoPi);
  const double off = rng.uniform(-1.0, 1.0);
  const double L = rng.uniform(2.0, 4.0);
  const int steps = rng.uniform_int(1500, 3000);
  const double h = L / steps;
  std::vector<Segment> segs;
  double norm_alpha = 0.0, omega_grid = 0.0, prev = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double angle = off + amp * std::sin(freq * ((i + 0.5) * h) + phase);
    segs.push_back({h, angle});
    norm_alpha = std::max(norm_alpha, std::fabs(angle));
    if (i > 0) omega_grid = std::max(omega_grid, std::fabs(angle - prev));
    prev = angle;
  }
  return {AngularPath(std::move(segs)), norm_alpha, omega_grid, amp, freq, L};
}

LemmaHypothesis gen_c1_convergence(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::C1Convergence;
  WaveSetup setup = gen_wave(rng);
  const double eps = rng.uniform(0.06, 0.24);
  const double h = 0.95 * eps / (setup.amp * setup.freq);
  const double omega_h = std::min(2.0 * setup.amp, setup.amp * setup.freq * h);
  hyp.omega_table = {{h, omega_h}};
  const double Lambda = setup.norm_alpha / (h * std::sin(eps));
  hyp.lambda = 2.0 * Lambda;
  hyp.phi0 = setup.path.segments().front().angle / 2.0;
  hyp.params["eps"] = eps;
  hyp.params["t0"] = 0.0;
  hyp.params["kappa"] = 0.0;
  hyp.params["omega_grid"] = setup.omega_grid;
  hyp.params["norm_alpha"] = setup.norm_alpha;
  hyp.path = std::move(setup.path);
  return hyp;
}

LemmaHypothesis gen_small_angle_entry(Rng& rng) {
  LemmaHypothesis hyp;
  hyp.id = LemmaId::SmallAngleEntry;
  WaveSetup setup = gen_wave(rng);
  const double eps = rng.uniform(0.08, 0.3);
  const double kappa = rng.uniform(0.6, 2.8);
  const double kappa_prime = kappa + 0.5 * (kPi - kappa);
  const double t0 = rng.uniform(0.4, std::min(1.5, setup.length / 2));
  const double delta =
      0.9 * std::min(t0, (kappa_prime - kappa) / (setup.amp * setup.freq));
  const double omega_delta =
      std::min(2.0 * setup.amp, setup.amp * setup.freq * delta);
  const double Lambda =
      (2.0 * setup.norm_alpha + kappa) / (2.0 * delta * std::sin(eps));
  hyp.lambda = 2.0 * Lambda;
  const double alpha0 = setup.path.segments().front().angle;
  const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
  hyp.phi0 = (alpha0 + side * kappa * rng.uniform(0.7, 0.999)) / 2.0;
  hyp.params["eps"] = eps;
  hyp.params["t0"] = t0;
  hyp.params["kappa"] = kappa;
  hyp.params["kappa_prime"] = kappa_prime;
  hyp.params["delta"] = delta;
  hyp.params["omega_delta"] = omega_delta;
  hyp.params["omega_grid"] = setup.omega_grid;
  hyp.params["norm_alpha"] = setup.norm_alpha;
  hyp.path = std::move(setup.path);
  return hyp;
}

}  // namespace

LemmaHypothesis generate_instance(LemmaId id, std::uint64_t seed,
                                  std::uint32_t index) {
  Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(id) + 1, index));
  switch (id) {
    case LemmaId::RangePhi: return gen_range_phi(rng);
    case LemmaId::DeviPhi: return gen_devi_phi(rng);
    case LemmaId::CatTim: return gen_cat_tim(rng);
    case LemmaId::EntryTime: return gen_entry_time(rng);
    case LemmaId::BadSet: return gen_bad_set(rng);
    case LemmaId::Comparison: return gen_comparison(rng);
    case LemmaId::C1Convergence: return gen_c1_convergence(rng);
    case LemmaId::SmallAngleEntry: return gen_small_angle_entry(rng);
  }
  throw std::invalid_argument("generate_instance: unknown lemma id");
}

std::string trajectory_csv(const AngleTrajectory& traj, std::size_t samples) {
  CsvWriter csv("t,alpha,two_phi,psi,cumulative_I");
  auto row = [&](double t) {
    csv.cell(t)
        .cell(traj.alpha_at(t))
        .cell(traj.two_phi_at(t))
        .cell(traj.psi_at(t))
        .cell(traj.cumulative_integral_at(t))
        .end_row();
  };
  if (samples > 0) {
    for (std::size_t j = 0; j <= samples; ++j) {
      row(traj.length * static_cast<double>(j) / static_cast<double>(samples));
    }
  } else {
    for (const auto& seg : traj.segments) row(seg.t_start);
    row(traj.length);
  }
  return csv.take();
}

SuiteResult run_suite(LemmaId id, std::uint64_t seed, std::uint32_t count) {
  SuiteResult result;
  result.id = id;
  result.seed = seed;
  result.count = count;
  result.verdicts.resize(count);
  parallel_for(count, [&](std::size_t i) {
    const LemmaHypothesis hyp =
        generate_instance(id, seed, static_cast<std::uint32_t>(i));
    LemmaVerdict v = verify(hyp);
    v.trace_ref = std::string(lemma_name(id)) + "/" + std::to_string(i);
    result.verdicts[i] = std::move(v);
  });
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto& v = result.verdicts[i];
    if (v.passed()) ++result.pass;
    if (v.failed()) ++result.fail;
    if (v.skipped()) ++result.skip;
    if (v.vacuous) ++result.vacuous;
    if (v.failed()) {
      const LemmaHypothesis hyp = generate_instance(id, seed, i);
      if (hyp.path) {
        result.failure_traces[v.trace_ref] =
            trajectory_csv(propagate(*hyp.path, hyp.lambda, hyp.phi0), 0);
      }
    }
  }
  return result;
}

namespace {

void verdict_fields(JsonWriter& w, const LemmaVerdict& v) {
  w.key("lemma").value(std::string_view(lemma_name(v.id)));
  const char* status = v.passed() ? "pass" : (v.failed() ? "fail" : "skip");
  w.key("status").value(std::string_view(status));
  w.key("predicted_bound").value(v.predicted_bound);
  w.key("observed").value(v.observed);
  w.key("margin").value(v.margin);
  w.key("vacuous").value(v.vacuous);
  w.key("detail").value(std::string_view(v.detail));
  w.key("trace_ref").value(std::string_view(v.trace_ref));
}

}  // namespace

std::string verdict_to_json(const LemmaVerdict& v) {
  JsonWriter w;
  w.begin_object();
  verdict_fields(w, v);
  w.end_object();
  return w.take();
}

std::string suite_to_json(const SuiteResult& r) {
  JsonWriter w;
  w.begin_object();
  w.key("lemma").value(std::string_view(lemma_name(r.id)));
  w.key("seed").value(static_cast<unsigned long long>(r.seed));
  w.key("count").value(static_cast<unsigned long long>(r.count));
  w.key("pass").value(static_cast<unsigned long long>(r.pass));
  w.key("fail").value(static_cast<unsigned long long>(r.fail));
  w.key("skip").value(static_cast<unsigned long long>(r.skip));
  w.key("vacuous").value(static_cast<unsigned long long>(r.vacuous));
  w.key("verdicts").begin_array();
  for (const auto& v : r.verdicts) {
    w.begin_object();
    verdict_fields(w, v);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

}  // namespace sigscope
