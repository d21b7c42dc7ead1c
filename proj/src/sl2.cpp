// SPDX-License-Identifier: Apache-2.0
#include "sigscope/sl2.hpp"

#include <cmath>
#include <stdexcept>

#include "sigscope/angle_utils.hpp"
#include "sigscope/parallel.hpp"

namespace sigscope {

namespace {
// per-multiply cap on lambda*dt inside develop()
constexpr double kMaxLogStep = 20.0;
}

Sl2Matrix direction_matrix(double beta) {
  const CosSin cs = reduced_cos_sin(beta);
  return {cs.c, cs.s, cs.s, -cs.c};
}

SingularValues singular_values(const Sl2Matrix& m) {
  const double e = (m.m11 + m.m22) / 2;
  const double f = (m.m11 - m.m22) / 2;
  const double g = (m.m21 + m.m12) / 2;
  const double h = (m.m21 - m.m12) / 2;
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  return {q + r, std::fabs(q - r)};
}

double log_operator_norm(const Sl2Matrix& m) {
  return std::log(singular_values(m).sigma_max);
}

LogScaledMatrix segment_propagator(double angle, double lambda_dt) {
  if (lambda_dt < 0.0) {
    throw std::invalid_argument("segment_propagator: lambda_dt must be >= 0");
  }
  // e^{x M} = e^x * (p I + q M), p = (1+e^{-2x})/2, q = (1-e^{-2x})/2.
  // p + q = 1, so the unit factor has operator norm exactly 1.
  const double em = std::expm1(-2.0 * lambda_dt);  // e^{-2x} - 1
  const double p = 1.0 + em / 2;
  const double q = -em / 2;
  const Sl2Matrix m = direction_matrix(angle);
  return {{p + q * m.m11, q * m.m12, q * m.m21, p + q * m.m22}, lambda_dt};
}

LogScaledMatrix multiply(const LogScaledMatrix& a, const LogScaledMatrix& b) {
  LogScaledMatrix out{a.unit * b.unit, a.log_scale + b.log_scale};
  const double sigma = singular_values(out.unit).sigma_max;
  if (sigma <= 0.0) {
    throw std::domain_error(
        "LogScaledMatrix multiply: unit product underflowed to zero "
        "(singular-value collapse beyond double range)");
  }
  if (sigma < 0.5 || sigma > 2.0) {
    out.unit = out.unit.scaled(1.0 / sigma);
    out.log_scale += std::log(sigma);
  }
  return out;
}

double log_operator_norm(const LogScaledMatrix& m) {
  return std::log(singular_values(m.unit).sigma_max) + m.log_scale;
}

double log_abs_det(const LogScaledMatrix& m) {
  return std::log(std::fabs(m.unit.det())) + 2.0 * m.log_scale;
}

double log_apply_norm(const LogScaledMatrix& m, std::array<double, 2> xi) {
  const auto v = m.unit.apply(xi);
  return std::log(std::hypot(v[0], v[1])) + m.log_scale;
}

LogScaledMatrix develop(const AngularPath& path, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("develop: lambda must be > 0");
  LogScaledMatrix acc = LogScaledMatrix::identity();
  for (const auto& seg : path.segments()) {
    double remaining = lambda * seg.duration;
    while (remaining > 0.0) {
      const double step = std::min(remaining, kMaxLogStep);
      acc = multiply(acc, segment_propagator(seg.angle, step));
      remaining -= step;
    }
  }
  return acc;
}

DevelopmentBoundReport development_length_bound(const AngularPath& path,
                                                std::span<const double> lambdas) {
  if (lambdas.empty()) {
    throw std::invalid_argument("development_length_bound: empty schedule");
  }
  DevelopmentBoundReport rep;
  rep.lambdas.assign(lambdas.begin(), lambdas.end());
  rep.log_norms.resize(lambdas.size());
  rep.bounds.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    const double log_norm = log_operator_norm(develop(path, lambdas[i]));
    rep.log_norms[i] = log_norm;
    rep.bounds[i] = log_norm / lambdas[i];
  });
  rep.max_bound = rep.bounds[0];
  for (double b : rep.bounds) rep.max_bound = std::max(rep.max_bound, b);
  const std::size_t n = rep.bounds.size();
  if (n >= 2) {
    const std::size_t k = n >= 3 ? n - 3 : 0;
    rep.slope_last3 = (rep.bounds[n - 1] - rep.bounds[k]) /
                      (std::log(rep.lambdas[n - 1]) - std::log(rep.lambdas[k]));
  }
  return rep;
}

std::vector<double> default_lambda_schedule() {
  std::vector<double> out;
  double v = 1.0;
  for (int i = 0; i <= 14; ++i) {
    out.push_back(v);
    v *= 2.0;
  }
  return out;
}

}  // namespace sigscope
