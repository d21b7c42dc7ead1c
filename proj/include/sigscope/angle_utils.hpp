// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace sigscope {

// kPi is the double closest to pi; it is the half period of every angular
// quantity in this library.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * kPi;

struct CosSin {
  double c;
  double s;
};

// cos/sin evaluated after reduction by the nearest integer multiple of kPi,
// with the parity sign applied. Two angles that differ by exactly k*kPi give
// exactly negated (k odd) or identical (k even) values, so structurally
// antipodal path segments cancel exactly in downstream matrix products.
inline CosSin reduced_cos_sin(double beta) {
  const double k = std::nearbyint(beta / kPi);
  const double r = std::fma(-k, kPi, beta);
  CosSin out{std::cos(r), std::sin(r)};
  if (std::fmod(std::fabs(k), 2.0) == 1.0) {
    out.c = -out.c;
    out.s = -out.s;
  }
  return out;
}

// Fold into (-pi, pi]. IEEE remainder is exact, so a jump by exactly kPi maps
// to exactly kPi, the unstable fixed point of the sine flow.
inline double fold_angle(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y = kPi;
  return y;
}

// Number of full turns removed by fold_angle.
inline double fold_turns(double raw, double folded) {
  return std::nearbyint((raw - folded) / kTwoPi);
}

}  // namespace sigscope
