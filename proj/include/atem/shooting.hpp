// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file shooting.hpp
/// Independent eigenvalue oracle for -psi'' + V psi = E psi on a finite
/// interval: classical RK4 shooting from both ends, matched at the midpoint.

#ifndef ATEM_SHOOTING_HPP
#define ATEM_SHOOTING_HPP

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "atem/error.hpp"

namespace atem {

namespace detail {

struct ShootState {
  double y;
  double dy;
};

/// Integrates y'' = (V - E) y from `from` to `to` (either direction) with
/// fixed-step RK4, starting from y = 0, y' = ±1e-20. Rescales on growth.
inline ShootState shoot(const std::function<double(double)>& V, double E, double from, double to, double step) {
  const int steps = static_cast<int>(std::ceil(std::fabs(to - from) / step));
  const double h = (to - from) / steps;
  double x = from;
  ShootState s{0.0, h > 0 ? 1e-20 : -1e-20};
  auto rhs = [&](double xx, const ShootState& st) { return ShootState{st.dy, (V(xx) - E) * st.y}; };
  for (int i = 0; i < steps; ++i) {
    const ShootState k1 = rhs(x, s);
    const ShootState k2 = rhs(x + h / 2, {s.y + h / 2 * k1.y, s.dy + h / 2 * k1.dy});
    const ShootState k3 = rhs(x + h / 2, {s.y + h / 2 * k2.y, s.dy + h / 2 * k2.dy});
    const ShootState k4 = rhs(x + h, {s.y + h * k3.y, s.dy + h * k3.dy});
    s.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    s.dy += h / 6 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy);
    x = from + (i + 1) * h;
    const double mag = std::fabs(s.y) + std::fabs(s.dy);
    if (mag > 1e100) {
      s.y /= mag;
      s.dy /= mag;
    }
  }
  return s;
}

} // namespace detail

/// Normalized Wronskian of the left and right solutions at the midpoint;
/// it vanishes exactly when they are proportional, i.e. at eigenvalues.
inline double shooting_mismatch(const std::function<double(double)>& V, double E, double x_min, double x_max,
                                double step) {
  const double mid = 0.5 * (x_min + x_max);
  const auto left = detail::shoot(V, E, x_min, mid, step);
  const auto right = detail::shoot(V, E, x_max, mid, step);
  const double nl = std::hypot(left.y, left.dy);
  const double nr = std::hypot(right.y, right.dy);
  return (left.dy * right.y - left.y * right.dy) / (nl * nr);
}

/// Eigenvalue nearest to `E_guess` within ±0.5, to about 1e-12 in E plus the
/// O(step^4) discretization error. Throws NumericError when no crossing exists.
inline double shooting_oracle(const std::function<double(double)>& V, double E_guess, double x_min, double x_max,
                              double step = 1e-3) {
  if (!(x_min < x_max) || !(step > 0))
    throw ContractError("shooting_oracle: need x_min < x_max and step > 0");
  constexpr double radius = 0.5;
  constexpr int scan = 100;
  const double h = 2 * radius / scan;
  auto f = [&](double E) { return shooting_mismatch(V, E, x_min, x_max, step); };

  double best_lo = 0, best_hi = 0, best_dist = INFINITY;
  double prev_E = E_guess - radius;
  double prev_f = f(prev_E);
  for (int i = 1; i <= scan; ++i) {
    const double E = E_guess - radius + i * h;
    const double val = f(E);
    if (prev_f == 0 || prev_f * val < 0) {
      const double dist = std::fabs(0.5 * (prev_E + E) - E_guess);
      if (dist < best_dist) {
        best_dist = dist;
        best_lo = prev_E;
        best_hi = E;
      }
    }
    prev_E = E;
    prev_f = val;
  }
  if (!std::isfinite(best_dist)) {
    std::ostringstream msg;
    msg << "shooting_oracle: no eigenvalue within ±" << radius << " of " << E_guess;
    throw NumericError(msg.str());
  }
  double lo = best_lo, hi = best_hi;
  double f_lo = f(lo);
  if (f_lo == 0)
    return lo;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0)
      return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace atem

#endif // ATEM_SHOOTING_HPP
