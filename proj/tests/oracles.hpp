// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, kept independent of the implementation paths they check:
// RK4 integration for the angle flow, long-double scaled products for the
// development, Simpson quadrature for level-2 iterated integrals, a
// scaling-and-squaring matrix exponential, and a golden-section maximizer.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "sigscope/angular_path.hpp"

namespace oracles {

// d(psi)/dt = -2 lambda sin(psi), classic RK4 at a fixed step.
inline double rk4_sine_flow(double psi0, double lambda, double t, double step) {
  double psi = psi0;
  const auto f = [lambda](double x) { return -2.0 * lambda * std::sin(x); };
  double remaining = t;
  while (remaining > 0.0) {
    const double h = remaining < step ? remaining : step;
    const double k1 = f(psi);
    const double k2 = f(psi + h / 2 * k1);
    const double k3 = f(psi + h / 2 * k2);
    const double k4 = f(psi + h * k3);
    psi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    remaining -= h;
  }
  return psi;
}

// RK4 for the full angle equation d(phi)/dt = lambda sin(alpha_t - 2 phi)
// with piecewise-constant alpha, plus the radial integral.
struct Rk4Result {
  double phi;
  double integral;
};
inline Rk4Result rk4_angle_dynamics(const sigscope::AngularPath& alpha,
                                    double lambda, double phi0, double step) {
  double phi = phi0;
  double integral = 0.0;
  for (const auto& seg : alpha.segments()) {
    const double a = seg.angle;
    const auto f = [&](double x) { return lambda * std::sin(a - 2.0 * x); };
    double remaining = seg.duration;
    while (remaining > 0.0) {
      const double h = remaining < step ? remaining : step;
      const double k1 = f(phi);
      const double k2 = f(phi + h / 2 * k1);
      const double k3 = f(phi + h / 2 * k2);
      const double k4 = f(phi + h * k3);
      // Simpson accumulation of cos(a - 2 phi) along the same stages
      const double c0 = std::cos(a - 2.0 * phi);
      const double cm = std::cos(a - 2.0 * (phi + h / 2 * k2));
      phi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      const double c1 = std::cos(a - 2.0 * phi);
      integral += h / 6 * (c0 + 4 * cm + c1);
      remaining -= h;
    }
  }
  return {phi, integral};
}

// 2x2 product in long double with explicit log-scale extraction: an
// independent route to log ||Gamma|| for the lambda-scaled development.
struct LongDoubleDev {
  long double m[2][2];
  long double log_scale;
};

inline LongDoubleDev ld_identity() { return {{{1.0L, 0.0L}, {0.0L, 1.0L}}, 0.0L}; }

inline LongDoubleDev ld_multiply_segment(const LongDoubleDev& acc, double angle,
                                         long double x) {
  // factor e^{x M} = e^x [p I + q M], advance in chunks of at most 16
  LongDoubleDev out = acc;
  long double remaining = x;
  const long double c = std::cos(static_cast<long double>(angle));
  const long double s = std::sin(static_cast<long double>(angle));
  while (remaining > 0.0L) {
    const long double h = remaining < 16.0L ? remaining : 16.0L;
    const long double em = std::expm1l(-2.0L * h);
    const long double p = 1.0L + em / 2.0L;
    const long double q = -em / 2.0L;
    const long double f[2][2] = {{p + q * c, q * s}, {q * s, p - q * c}};
    long double next[2][2];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        next[i][j] = out.m[i][0] * f[0][j] + out.m[i][1] * f[1][j];
      }
    }
    long double biggest = 0.0L;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) biggest = std::max(biggest, std::fabs(next[i][j]));
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) out.m[i][j] = next[i][j] / biggest;
    }
    out.log_scale += h + std::logl(biggest);
    remaining -= h;
  }
  return out;
}

inline long double ld_log_operator_norm(const LongDoubleDev& dev) {
  const long double e = (dev.m[0][0] + dev.m[1][1]) / 2.0L;
  const long double f = (dev.m[0][0] - dev.m[1][1]) / 2.0L;
  const long double g = (dev.m[1][0] + dev.m[0][1]) / 2.0L;
  const long double h = (dev.m[1][0] - dev.m[0][1]) / 2.0L;
  const long double q = std::sqrtl(e * e + h * h);
  const long double r = std::sqrtl(f * f + g * g);
  return std::logl(q + r) + dev.log_scale;
}

inline long double ld_develop_log_norm(const sigscope::AngularPath& path,
                                       double lambda) {
  LongDoubleDev acc = ld_identity();
  for (const auto& seg : path.segments()) {
    acc = ld_multiply_segment(acc, seg.angle,
                              static_cast<long double>(lambda) * seg.duration);
  }
  return ld_log_operator_norm(acc);
}

// Level-2 iterated integral int_{0<t1<t2<L} dgamma_i dgamma_j of a polyline,
// via composite Simpson over t2 of gamma_j'(t2) (gamma_i(t2) - gamma_i(0)).
inline std::array<double, 4> simpson_level2(const sigscope::AngularPath& path,
                                            int panels_per_segment) {
  const auto planar = sigscope::realize(path);
  std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};  // words 11, 12, 21, 22
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& seg = path.segments()[k];
    const double vx = std::cos(seg.angle);
    const double vy = std::sin(seg.angle);
    const double x0 = planar.vertices[k][0];
    const double y0 = planar.vertices[k][1];
    const int n = panels_per_segment;
    const double h = seg.duration / (2 * n);
    auto position = [&](double tau) {
      return std::array<double, 2>{x0 + tau * vx, y0 + tau * vy};
    };
    for (int p = 0; p < n; ++p) {
      const double t0 = 2 * p * h;
      const auto g0 = position(t0);
      const auto gm = position(t0 + h);
      const auto g1 = position(t0 + 2 * h);
      const double wx0 = g0[0], wxm = gm[0], wx1 = g1[0];
      const double wy0 = g0[1], wym = gm[1], wy1 = g1[1];
      out[0] += vx * h / 3 * (wx0 + 4 * wxm + wx1);
      out[1] += vy * h / 3 * (wx0 + 4 * wxm + wx1);
      out[2] += vx * h / 3 * (wy0 + 4 * wym + wy1);
      out[3] += vy * h / 3 * (wy0 + 4 * wym + wy1);
    }
  }
  return out;
}

// shoelace area of the closed-up polyline: the Levy area oracle
inline double shoelace_area(const sigscope::PlanarPath& planar) {
  double twice = 0.0;
  const auto& v = planar.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return twice / 2.0;
}

// scaling-and-squaring exponential of a general 2x2 (Taylor at scaled input)
inline std::array<double, 4> expm_2x2(std::array<double, 4> a) {
  double norm = 0.0;
  for (double x : a) norm = std::max(norm, std::fabs(x));
  int squarings = 0;
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
    for (double& x : a) x /= 2;
  }
  auto mul = [](const std::array<double, 4>& p, const std::array<double, 4>& q) {
    return std::array<double, 4>{
        p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
  };
  std::array<double, 4> result{1, 0, 0, 1};
  std::array<double, 4> term{1, 0, 0, 1};
  for (int k = 1; k <= 20; ++k) {
    term = mul(term, a);
    for (double& x : term) x /= k;
    for (int i = 0; i < 4; ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

// 1-D maximizer: coarse grid then golden-section refinement
inline double golden_max(const std::function<double(double)>& f, double lo,
                         double hi, int grid) {
  double best_x = lo, best_v = f(lo);
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + (hi - lo) * i / grid;
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double a = best_x - (hi - lo) / grid;
  double b = best_x + (hi - lo) / grid;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - inv_phi * (b - a);
    d = a + inv_phi * (b - a);
  }
  return f((a + b) / 2);
}

}  // namespace oracles
