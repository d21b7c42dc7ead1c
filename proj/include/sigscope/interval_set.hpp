// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <vector>

namespace sigscope {

// Finite union of closed intervals, kept sorted and disjoint. All measure
// computations in the lemma harness go through this class; nothing is sampled.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::array<double, 2>> intervals) {
    for (auto& iv : intervals) {
      if (iv[1] > iv[0]) iv_.push_back(iv);
    }
    std::sort(iv_.begin(), iv_.end());
    normalize();
  }

  static IntervalSet single(double lo, double hi) {
    return IntervalSet({{lo, hi}});
  }

  const std::vector<std::array<double, 2>>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }

  double measure() const {
    double m = 0.0;
    for (const auto& iv : iv_) m += iv[1] - iv[0];
    return m;
  }

  bool contains(double t) const {
    for (const auto& iv : iv_) {
      if (t >= iv[0] && t <= iv[1]) return true;
    }
    return false;
  }

  IntervalSet intersect(double lo, double hi) const {
    std::vector<std::array<double, 2>> out;
    for (const auto& iv : iv_) {
      const double a = std::max(iv[0], lo);
      const double b = std::min(iv[1], hi);
      if (b > a) out.push_back({a, b});
    }
    IntervalSet r;
    r.iv_ = std::move(out);
    return r;
  }

  double measure_intersection(double lo, double hi) const {
    double m = 0.0;
    for (const auto& iv : iv_) {
      const double a = std::max(iv[0], lo);
      const double b = std::min(iv[1], hi);
      if (b > a) m += b - a;
    }
    return m;
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<std::array<double, 2>> out;
    for (const auto& iv : iv_) {
      for (const auto& jv : other.iv_) {
        const double a = std::max(iv[0], jv[0]);
        const double b = std::min(iv[1], jv[1]);
        if (b > a) out.push_back({a, b});
      }
    }
    IntervalSet r;
    r.iv_ = std::move(out);
    std::sort(r.iv_.begin(), r.iv_.end());
    r.normalize();
    return r;
  }

  IntervalSet subtract(const IntervalSet& other) const {
    std::vector<std::array<double, 2>> out;
    for (const auto& iv : iv_) {
      double cur = iv[0];
      for (const auto& jv : other.iv_) {
        if (jv[1] <= cur) continue;
        if (jv[0] >= iv[1]) break;
        if (jv[0] > cur) out.push_back({cur, jv[0]});
        cur = std::max(cur, jv[1]);
        if (cur >= iv[1]) break;
      }
      if (cur < iv[1]) out.push_back({cur, iv[1]});
    }
    IntervalSet r;
    r.iv_ = std::move(out);
    return r;
  }

  IntervalSet complement_within(double lo, double hi) const {
    return IntervalSet::single(lo, hi).subtract(*this);
  }

 private:
  void normalize() {
    std::vector<std::array<double, 2>> merged;
    for (const auto& iv : iv_) {
      if (!merged.empty() && iv[0] <= merged.back()[1]) {
        merged.back()[1] = std::max(merged.back()[1], iv[1]);
      } else {
        merged.push_back(iv);
      }
    }
    iv_ = std::move(merged);
  }

  std::vector<std::array<double, 2>> iv_;
};

}  // namespace sigscope
