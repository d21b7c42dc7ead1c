// SPDX-License-Identifier: Apache-2.0
#include "sigscope/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigscope/angle_utils.hpp"
#include "sigscope/emit.hpp"
#include "sigscope/errors.hpp"
#include "sigscope/parallel.hpp"
#include "sigscope/tensor_series.hpp"

namespace sigscope {

namespace {

constexpr double kSoundnessSlack = 1e-9;
constexpr int kRankOneGrid = 1024;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<SignatureRow> signature_rows(const AngularPath& beta_path,
                                         int depth, double L) {
  const TensorSeries sig = signature(beta_path, depth);
  std::vector<SignatureRow> rows(static_cast<std::size_t>(depth));
  parallel_for(rows.size(), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    SignatureRow row;
    row.n = n;
    const auto level = sig.level(n);
    const double log_hs = log_hs_norm(level);
    row.hs = log_hs == kNegInf ? 0.0 : std::exp(log_hs);
    row.rank_one = free_rank_one_lower_bound(level, kRankOneGrid);
    row.log_variation_upper = log_variation_upper_bound(L, n);
    row.normalized_hs = normalized_level_estimate(log_hs, n);
    row.normalized_rank_one = normalized_level_estimate(
        row.rank_one > 0.0 ? std::log(row.rank_one) : kNegInf, n);
    rows[i] = row;
  });
  return rows;
}

void fill_convergence(EstimateReport& rep) {
  for (const auto& row : rep.signature) {
    rep.signature_best = std::max(rep.signature_best, row.normalized_rank_one);
  }
  if (!rep.signature.empty()) {
    rep.signature_last = rep.signature.back().normalized_rank_one;
  }
  const std::size_t n = rep.development.size();
  if (n >= 2) {
    const std::size_t k = n >= 3 ? n - 3 : 0;
    const double dl = std::log(rep.development[n - 1].lambda) -
                      std::log(rep.development[k].lambda);
    if (dl != 0.0) {
      rep.dev_slope_last3 =
          (rep.development[n - 1].dev_bound - rep.development[k].dev_bound) / dl;
    }
    // least-squares slope of log(L - bound) against log(lambda)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& row : rep.development) {
      const double gap = rep.true_length - std::max(row.dev_bound, row.integral_bound);
      if (!(gap > 0.0)) continue;
      const double x = std::log(row.lambda);
      const double y = std::log(gap);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++m;
    }
    if (m >= 2 && sxx * m - sx * sx != 0.0) {
      rep.gap_loglog_slope = (sxy * m - sx * sy) / (sxx * m - sx * sx);
    }
  }
}

void check_soundness(const EstimateReport& rep) {
  const double cap = rep.true_length + kSoundnessSlack;
  auto bad = [&](double bound, const char* what) {
    if (bound > cap) {
      throw SoundnessError(std::string("soundness violation: ") + what + " = " +
                           format_double(bound) + " exceeds true length " +
                           format_double(rep.true_length));
    }
  };
  bad(rep.headline_lower, "headline_lower");
  for (const auto& row : rep.development) {
    bad(row.dev_bound, "development bound");
    bad(row.integral_bound, "integral bound");
  }
  for (const auto& row : rep.signature) {
    bad(row.normalized_hs, "normalized hs estimate");
    bad(row.normalized_rank_one, "normalized rank-one estimate");
  }
}

}  // namespace

EstimateReport estimate_length(const AngularPath& beta_path, int depth,
                               std::span<const double> lambdas, double kappa) {
  if (depth < 4) throw std::invalid_argument("estimate_length: depth must be >= 4");
  if (lambdas.empty()) throw std::invalid_argument("estimate_length: empty schedule");
  const double L = beta_path.length();
  if (!(kappa >= 0.0 && kappa < L / 4)) {
    throw std::invalid_argument("estimate_length: need 0 <= kappa < L/4");
  }

  EstimateReport rep;
  rep.true_length = L;
  rep.headline_upper = L;
  rep.kappa = kappa;
  rep.depth = depth;
  rep.signature = signature_rows(beta_path, depth, L);

  const AngularPath alpha_path = beta_path.reversed();
  const AngularPath dev_path =
      kappa > 0.0 ? beta_path.restricted(kappa, L - kappa) : beta_path;
  const Phi0Policy policy = kappa > 0.0 ? Phi0Policy::endpoint_free(kappa)
                                        : Phi0Policy::aligned();
  const DevelopmentBoundReport dev = development_length_bound(dev_path, lambdas);
  const IntegralBoundReport dyn = integral_lower_bound(alpha_path, lambdas, policy);

  rep.development.resize(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    DevelopmentRow row;
    row.lambda = lambdas[i];
    row.log_norm = dev.log_norms[i];
    row.dev_bound = dev.bounds[i] - 2.0 * kappa;
    row.integral = dyn.rows[i].integral;
    row.integral_bound = dyn.rows[i].bound;
    rep.development[i] = row;
  }
  rep.headline_lower = rep.development[0].dev_bound;
  for (const auto& row : rep.development) {
    rep.headline_lower = std::max(
        rep.headline_lower, std::max(row.dev_bound, row.integral_bound));
  }
  fill_convergence(rep);
  check_soundness(rep);
  return rep;
}

EstimateReport estimate_singular_cusp(const SingularCuspSpec& spec,
                                      int resolution,
                                      std::span<const double> lambdas,
                                      std::span<const double> t2_offsets,
                                      int depth) {
  if (!(spec.c > 0.0 && spec.c < 1.0)) {
    throw std::invalid_argument(
        "estimate_singular_cusp: c must lie in (0, 1) strictly");
  }
  if (lambdas.empty()) {
    throw std::invalid_argument("estimate_singular_cusp: empty schedule");
  }
  const double L = spec.total_length;
  for (double off : t2_offsets) {
    if (!(off > 0.0 && off < L / 2)) {
      throw std::invalid_argument(
          "estimate_singular_cusp: offsets must lie in (0, L/2)");
    }
  }

  const AngularPath alpha_path = make_singular_cusp(spec, resolution);
  const AngularPath beta_path = alpha_path.reversed();

  EstimateReport rep;
  rep.true_length = L;
  rep.headline_upper = L;
  rep.depth = depth;
  if (depth >= 1) rep.signature = signature_rows(beta_path, depth, L);

  const DevelopmentBoundReport dev = development_length_bound(beta_path, lambdas);
  const IntegralBoundReport dyn =
      integral_lower_bound(alpha_path, lambdas, Phi0Policy::aligned());
  rep.development.resize(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    rep.development[i] = {lambdas[i], dev.log_norms[i], dev.bounds[i],
                          dyn.rows[i].integral, dyn.rows[i].bound};
  }
  rep.headline_lower = rep.development[0].dev_bound;
  for (const auto& row : rep.development) {
    rep.headline_lower = std::max(
        rep.headline_lower, std::max(row.dev_bound, row.integral_bound));
  }

  // push-in claim: at t2 the doubled angle has entered
  // R2 = [a - pi - c r, a - pi], the range of alpha on the second half
  CuspReport cusp;
  cusp.r2_lo = spec.a - kPi - spec.c * spec.r;
  cusp.r2_hi = spec.a - kPi;
  const double phi0 = alpha_path.segments().front().angle / 2.0;
  std::vector<AngleTrajectory> trajs(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    trajs[i] = propagate(alpha_path, lambdas[i], phi0);
  });
  for (double off : t2_offsets) {
    CuspOffsetRow row;
    row.offset = off;
    row.t2 = L / 2 + off;
    double lambda_max = lambdas[0];
    std::size_t idx_max = 0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (lambdas[i] >= lambda_max) {
        lambda_max = lambdas[i];
        idx_max = i;
      }
      const double tp = trajs[i].two_phi_at(L / 2 + off);
      if (tp >= cusp.r2_lo && tp <= cusp.r2_hi &&
          (row.lambda_push_min == 0.0 || lambdas[i] < row.lambda_push_min)) {
        row.lambda_push_min = lambdas[i];
      }
    }
    row.two_phi_t2 = trajs[idx_max].two_phi_at(row.t2);
    row.push_in = row.two_phi_t2 >= cusp.r2_lo && row.two_phi_t2 <= cusp.r2_hi;
    row.cert_bound = L - 2.0 * off;
    cusp.offsets.push_back(row);
  }
  rep.cusp = std::move(cusp);
  fill_convergence(rep);
  check_soundness(rep);
  return rep;
}

std::string estimate_to_json(const EstimateReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("true_length").value(rep.true_length);
  w.key("headline_lower").value(rep.headline_lower);
  w.key("headline_upper").value(rep.headline_upper);
  w.key("kappa").value(rep.kappa);
  w.key("depth").value(rep.depth);
  w.key("signature").begin_array();
  for (const auto& row : rep.signature) {
    w.begin_object();
    w.key("n").value(row.n);
    w.key("hs_norm").value(row.hs);
    w.key("rank_one_lower_bound").value(row.rank_one);
    w.key("log_variation_upper").value(row.log_variation_upper);
    w.key("normalized_hs").value(row.normalized_hs);
    w.key("normalized_rank_one").value(row.normalized_rank_one);
    w.end_object();
  }
  w.end_array();
  w.key("development").begin_array();
  for (const auto& row : rep.development) {
    w.begin_object();
    w.key("lambda").value(row.lambda);
    w.key("log_norm").value(row.log_norm);
    w.key("dev_bound").value(row.dev_bound);
    w.key("integral").value(row.integral);
    w.key("integral_bound").value(row.integral_bound);
    w.end_object();
  }
  w.end_array();
  w.key("convergence").begin_object();
  w.key("signature_best").value(rep.signature_best);
  w.key("signature_last").value(rep.signature_last);
  w.key("dev_slope_last3").value(rep.dev_slope_last3);
  w.key("gap_loglog_slope").value(rep.gap_loglog_slope);
  w.end_object();
  if (rep.cusp) {
    w.key("cusp").begin_object();
    w.key("r2_lo").value(rep.cusp->r2_lo);
    w.key("r2_hi").value(rep.cusp->r2_hi);
    w.key("offsets").begin_array();
    for (const auto& row : rep.cusp->offsets) {
      w.begin_object();
      w.key("offset").value(row.offset);
      w.key("t2").value(row.t2);
      w.key("two_phi_t2").value(row.two_phi_t2);
      w.key("push_in").value(row.push_in);
      w.key("lambda_push_min").value(row.lambda_push_min);
      w.key("cert_bound").value(row.cert_bound);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_object();
  return w.take();
}

std::string signature_csv(const EstimateReport& rep) {
  CsvWriter csv(
      "n,hs_norm,rank_one_lower_bound,log_variation_upper,normalized_hs,"
      "normalized_rank_one");
  for (const auto& row : rep.signature) {
    csv.cell(static_cast<long long>(row.n))
        .cell(row.hs)
        .cell(row.rank_one)
        .cell(row.log_variation_upper)
        .cell(row.normalized_hs)
        .cell(row.normalized_rank_one)
        .end_row();
  }
  return csv.take();
}

std::string development_csv(const EstimateReport& rep) {
  CsvWriter csv("lambda,log_norm,log_norm_over_lambda,integral,integral_bound");
  for (const auto& row : rep.development) {
    csv.cell(row.lambda)
        .cell(row.log_norm)
        .cell(row.dev_bound)
        .cell(row.integral)
        .cell(row.integral_bound)
        .end_row();
  }
  return csv.take();
}

Cover build_cover(double total_length, std::span<const CoverWindow> windows) {
  if (windows.empty()) {
    throw CoverageError(0.0, "build_cover: no windows; point 0 uncovered");
  }
  std::vector<bool> used(windows.size(), false);
  auto pick = [&](double point) -> std::size_t {
    std::size_t best = windows.size();
    for (std::size_t i = 0; i < windows.size(); ++i) {
      if (used[i]) continue;
      if (windows[i].lo < point && point < windows[i].hi) {
        if (best == windows.size() || windows[i].hi > windows[best].hi) best = i;
      }
    }
    if (best == windows.size()) {
      throw CoverageError(point, "build_cover: point " + format_double(point) +
                                     " not covered by any unused window");
    }
    used[best] = true;
    return best;
  };

  Cover cover;
  cover.v_points.push_back(0.0);
  cover.u_points.push_back(0.0);

  std::size_t first = pick(0.0);
  cover.window_index.push_back(first);
  double v = windows[first].hi;
  double prev_window_lo = windows[first].lo;
  while (v < total_length) {
    cover.v_points.push_back(v);
    const std::size_t next = pick(v);
    // u_i in (max(u_i', v_{i-1}), v_i), midpoint of the admissible range
    const double lo = std::max(windows[next].lo, cover.v_points[cover.v_points.size() - 2]);
    cover.u_points.push_back((lo + v) / 2.0);
    cover.window_index.push_back(next);
    prev_window_lo = windows[next].lo;
    v = windows[next].hi;
  }
  (void)prev_window_lo;
  cover.v_points.push_back(total_length);
  return cover;
}

}  // namespace sigscope
