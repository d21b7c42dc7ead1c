// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "sigscope/angular_path.hpp"

namespace sigscope {

struct Sl2Matrix {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  double det() const { return m11 * m22 - m12 * m21; }
  Sl2Matrix operator*(const Sl2Matrix& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
  std::array<double, 2> apply(std::array<double, 2> v) const {
    return {m11 * v[0] + m12 * v[1], m21 * v[0] + m22 * v[1]};
  }
  Sl2Matrix scaled(double f) const { return {m11 * f, m12 * f, m21 * f, m22 * f}; }
};

inline const Sl2Matrix kE1{1.0, 0.0, 0.0, -1.0};
inline const Sl2Matrix kE2{0.0, 1.0, 1.0, 0.0};
inline const Sl2Matrix kE3{0.0, 1.0, -1.0, 0.0};

// M(beta) = cos(beta)*E1 + sin(beta)*E2; symmetric, trace zero, M^2 = I.
Sl2Matrix direction_matrix(double beta);

// Closed-form 2x2 singular values (exact, no iteration).
struct SingularValues {
  double sigma_max;
  double sigma_min;
};
SingularValues singular_values(const Sl2Matrix& m);
double log_operator_norm(const Sl2Matrix& m);

// exp(log_scale) * unit, with the unit factor kept in the well-conditioned
// operator-norm range [1/2, 2]. Products at huge lambda never overflow; at
// extreme collapse (e^{-2 lambda L} below double range) only the smallest
// singular value of the stored unit degrades, never the norm channel.
struct LogScaledMatrix {
  Sl2Matrix unit;
  double log_scale = 0.0;

  static LogScaledMatrix identity() { return {Sl2Matrix{}, 0.0}; }
};

// exp(lambda_dt * M(angle)) = cosh*I + sinh*M, assembled directly in scaled
// form via expm1 so it is exact for every lambda_dt >= 0.
LogScaledMatrix segment_propagator(double angle, double lambda_dt);

// Renormalizing product.
LogScaledMatrix multiply(const LogScaledMatrix& a, const LogScaledMatrix& b);

double log_operator_norm(const LogScaledMatrix& m);
// de-scaled determinant diagnostic: log|det| of the represented matrix
// (== 0 for an exact SL2 element); meaningful while e^{-2 log_scale} is
// representable.
double log_abs_det(const LogScaledMatrix& m);

// log |Gamma * xi| for a unit vector xi.
double log_apply_norm(const LogScaledMatrix& m, std::array<double, 2> xi);

// Ordered product of segment propagators for the lambda-scaled development,
// earliest segment leftmost. Long segments are split so lambda*dt <= 20 per
// multiply, which keeps every intermediate in range.
LogScaledMatrix develop(const AngularPath& path, double lambda);

struct DevelopmentBoundReport {
  std::vector<double> lambdas;
  std::vector<double> log_norms;
  std::vector<double> bounds;  // log_norm / lambda, each a certified lower bound
  double max_bound = 0.0;
  double slope_last3 = 0.0;  // d(bound)/d(log lambda) over the last 3 points
};

DevelopmentBoundReport development_length_bound(const AngularPath& path,
                                                std::span<const double> lambdas);

// Default schedule: lambda = 2^0 .. 2^14.
std::vector<double> default_lambda_schedule();

}  // namespace sigscope
