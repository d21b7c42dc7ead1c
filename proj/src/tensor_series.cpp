// SPDX-License-Identifier: Apache-2.0
#include "sigscope/tensor_series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigscope/angle_utils.hpp"

namespace sigscope {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

TensorSeries::TensorSeries(int depth) : depth_(depth) {
  if (depth < 1) throw std::invalid_argument("TensorSeries: depth must be >= 1");
  levels_.resize(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    levels_[n].assign(std::size_t{1} << n, 0.0);
  }
  levels_[0][0] = 1.0;
}

TensorSeries TensorSeries::identity(int depth) { return TensorSeries(depth); }

TensorSeries TensorSeries::segment(std::array<double, 2> v, int depth) {
  TensorSeries out(depth);
  for (int n = 1; n <= depth; ++n) {
    const auto& prev = out.levels_[n - 1];
    auto& cur = out.levels_[n];
    const double inv = 1.0 / n;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double base = prev[i] * inv;
      cur[2 * i] = base * v[0];
      cur[2 * i + 1] = base * v[1];
    }
  }
  return out;
}

TensorSeries chen_concat(const TensorSeries& a, const TensorSeries& b) {
  if (a.depth() != b.depth()) {
    throw std::invalid_argument("chen_concat: depth mismatch");
  }
  const int depth = a.depth();
  TensorSeries out = TensorSeries::identity(depth);
  for (int n = 1; n <= depth; ++n) {
    auto dst = out.level_mut(n);
    for (int k = 0; k <= n; ++k) {
      const auto la = a.level(k);
      const auto lb = b.level(n - k);
      const std::size_t stride = lb.size();
      for (std::size_t i = 0; i < la.size(); ++i) {
        const double ai = la[i];
        if (ai == 0.0) continue;
        double* d = dst.data() + i * stride;
        for (std::size_t j = 0; j < stride; ++j) d[j] += ai * lb[j];
      }
    }
  }
  return out;
}

TensorSeries signature(const AngularPath& path, int depth) {
  const auto& segs = path.segments();
  const CosSin cs0 = reduced_cos_sin(segs[0].angle);
  TensorSeries acc = TensorSeries::segment(
      {segs[0].duration * cs0.c, segs[0].duration * cs0.s}, depth);
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const CosSin cs = reduced_cos_sin(segs[i].angle);
    acc = chen_concat(acc, TensorSeries::segment({segs[i].duration * cs.c,
                                                  segs[i].duration * cs.s},
                                                 depth));
  }
  return acc;
}

double log_hs_norm(std::span<const double> level) {
  double maxabs = 0.0;
  for (double x : level) maxabs = std::max(maxabs, std::fabs(x));
  if (maxabs == 0.0) return kNegInf;
  double sum = 0.0;
  const double inv = 1.0 / maxabs;
  for (double x : level) {
    const double y = x * inv;
    sum += y * y;
  }
  return std::log(maxabs) + 0.5 * std::log(sum);
}

double hs_norm(std::span<const double> level) {
  const double lg = log_hs_norm(level);
  return lg == kNegInf ? 0.0 : std::exp(lg);
}

namespace {

// Symmetrized word sums: S_k = sum of coordinates of words with k letters
// equal to 2. The pairing with w(theta)^{x n} is then
// sum_k S_k cos^{n-k} sin^k, evaluated per grid angle in O(n).
std::vector<double> symmetric_sums(std::span<const double> level) {
  const std::size_t size = level.size();
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    s[static_cast<std::size_t>(std::popcount(i))] += level[i];
  }
  return s;
}

double symmetric_pairing(const std::vector<double>& sums, double theta) {
  const int n = static_cast<int>(sums.size()) - 1;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Horner on t = s/c breaks at c ~ 0; evaluate by powers with a running pair.
  double acc = 0.0;
  double cp = 1.0;
  std::vector<double> spow(static_cast<std::size_t>(n) + 1);
  spow[0] = 1.0;
  for (int k = 1; k <= n; ++k) spow[k] = spow[k - 1] * s;
  for (int k = n; k >= 0; --k) {
    acc += sums[static_cast<std::size_t>(k)] * cp * spow[k];
    cp *= c;
  }
  return acc;
}

int round_up_pow2(int grid) {
  int g = 1;
  while (g < grid) g *= 2;
  return g;
}

}  // namespace

double rank_one_lower_bound(std::span<const double> level, int grid) {
  if (grid < 8) throw std::invalid_argument("rank_one_lower_bound: grid must be >= 8");
  if (level.size() == 1) return std::fabs(level[0]);
  const auto sums = symmetric_sums(level);
  const int g = round_up_pow2(grid);
  double best = 0.0;
  for (int j = 0; j < g; ++j) {
    const double theta = kTwoPi * j / g;
    best = std::max(best, std::fabs(symmetric_pairing(sums, theta)));
  }
  return best;
}

namespace {

// Fold the leading slot of a 2^m array with w: out has size 2^{m-1}.
void fold_first(const std::vector<double>& in, std::array<double, 2> w,
                std::vector<double>& out) {
  const std::size_t half = in.size() / 2;
  out.resize(half);
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = w[0] * in[i] + w[1] * in[half + i];
  }
}

// Fold the trailing slot: pairs of adjacent entries.
void fold_last(const std::vector<double>& in, std::array<double, 2> w,
               std::vector<double>& out) {
  const std::size_t half = in.size() / 2;
  out.resize(half);
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = w[0] * in[2 * i] + w[1] * in[2 * i + 1];
  }
}

double evaluate_slots(std::span<const double> level,
                      const std::vector<std::array<double, 2>>& w) {
  std::vector<double> cur(level.begin(), level.end());
  std::vector<double> next;
  for (const auto& wi : w) {
    fold_first(cur, wi, next);
    std::swap(cur, next);
  }
  return cur[0];
}

}  // namespace

double free_rank_one_lower_bound(std::span<const double> level, int grid) {
  if (level.size() == 1) return std::fabs(level[0]);
  const int n = static_cast<int>(std::countr_zero(level.size()));
  const double sym = rank_one_lower_bound(level, grid);
  if (n == 1) return sym;

  // Seed candidates: best symmetric grid angle, plus the axis step patterns
  // e1^k e2^{n-k} and their mirrors (cheap single evaluations); keep the
  // strongest few and polish them by cyclic alternating ascent.
  const auto sums = symmetric_sums(level);
  const int g = round_up_pow2(grid);
  double best_theta = 0.0, best_grid = -1.0;
  for (int j = 0; j < g; ++j) {
    const double theta = kTwoPi * j / g;
    const double v = std::fabs(symmetric_pairing(sums, theta));
    if (v > best_grid) {
      best_grid = v;
      best_theta = theta;
    }
  }
  using Slots = std::vector<std::array<double, 2>>;
  const std::array<double, 2> e1{1.0, 0.0}, e2{0.0, 1.0};
  std::vector<std::pair<double, Slots>> candidates;
  {
    Slots sym_seed(static_cast<std::size_t>(n),
                   {std::cos(best_theta), std::sin(best_theta)});
    candidates.emplace_back(std::fabs(evaluate_slots(level, sym_seed)),
                            std::move(sym_seed));
    for (int k = 0; k <= n; ++k) {
      Slots pat(static_cast<std::size_t>(n));
      Slots mirror(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        pat[static_cast<std::size_t>(i)] = i < k ? e1 : e2;
        mirror[static_cast<std::size_t>(i)] = i < k ? e2 : e1;
      }
      candidates.emplace_back(std::fabs(evaluate_slots(level, pat)), std::move(pat));
      candidates.emplace_back(std::fabs(evaluate_slots(level, mirror)),
                              std::move(mirror));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  const std::size_t keep = std::min<std::size_t>(3, candidates.size());

  double best = sym;
  std::vector<std::vector<double>> suffix(static_cast<std::size_t>(n) + 1);
  std::vector<double> lead, scratch;
  for (std::size_t s = 0; s < keep; ++s) {
    Slots w = candidates[s].second;
    double prev = candidates[s].first;
    for (int sweep = 0; sweep < 60; ++sweep) {
      // suffix[i] = level folded with the current w_{i+1..n} on trailing
      // slots, size 2^i; independent of w_1..w_i, so a left-to-right
      // Gauss-Seidel sweep can reuse it while slots update.
      suffix[static_cast<std::size_t>(n)].assign(level.begin(), level.end());
      for (int i = n - 1; i >= 1; --i) {
        fold_last(suffix[static_cast<std::size_t>(i) + 1],
                  w[static_cast<std::size_t>(i)],
                  suffix[static_cast<std::size_t>(i)]);
      }
      double val = prev;
      for (int i = 1; i <= n; ++i) {
        lead = suffix[static_cast<std::size_t>(i)];
        for (int j = 0; j < i - 1; ++j) {
          fold_first(lead, w[static_cast<std::size_t>(j)], scratch);
          std::swap(lead, scratch);
        }
        const double norm = std::hypot(lead[0], lead[1]);
        if (norm > 0.0) {
          w[static_cast<std::size_t>(i - 1)] = {lead[0] / norm, lead[1] / norm};
          val = norm;
        }
      }
      if (val <= prev * (1.0 + 1e-13)) {
        prev = std::max(prev, val);
        break;
      }
      prev = val;
    }
    best = std::max(best, prev);
  }
  return best;
}

double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171, 0.0);
    double acc = 0.0;
    for (int k = 1; k < 171; ++k) {
      acc += std::log(static_cast<double>(k));
      t[static_cast<std::size_t>(k)] = acc;
    }
    return t;
  }();
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  if (n < static_cast<int>(table.size())) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_variation_upper_bound(double L, int n) {
  return n * std::log(L) - log_factorial(n);
}

double normalized_level_estimate(double log_norm, int n) {
  if (log_norm == kNegInf) return 0.0;
  return std::exp((log_factorial(n) + log_norm) / n);
}

}  // namespace sigscope
