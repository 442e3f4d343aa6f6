// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file regular.hpp
/// Derivative recurrence and quantization functionals for regular problems
///
///     f'' = p0(x) f' + q0(x; E) f,      q0(x; E) = q0_base(x) + E q0_E(x).
///
/// Differentiating n times gives f^(n+2) = p_n f' + q_n f with
///
///     p_n = p0 p_{n-1} + p'_{n-1} + q_{n-1},
///     q_n = q0 p_{n-1} + q'_{n-1}.
///
/// The values p_n(0), q_n(0) are the Taylor data of the solution at the
/// origin: t_{n+2} = (q_n(0) f(0) + p_n(0) f'(0)) / (n+2)!.  Requiring the
/// Taylor polynomial to stop at degree k (coefficients of x^k and x^{k-1}
/// vanish) gives the 2x2 system in (f(0), f'(0)) whose determinant is the
/// quantization functional delta_m with m = k - 2.

#ifndef ATEM_REGULAR_HPP
#define ATEM_REGULAR_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atem/big_real.hpp"
#include "atem/error.hpp"
#include "atem/series.hpp"

namespace atem {

enum class ParityHint { none, even_potential };

/// Sector of a parity problem: even states have f'(0) = 0, odd ones f(0) = 0.
enum class Parity { even, odd };

template <class Real = BigReal>
struct RegularProblem {
  std::string name;
  TruncSeries<Real> p0;
  TruncSeries<Real> q0_base;
  TruncSeries<Real> q0_E;
  /// W(x) in psi = f exp(-∫W dx), and its antiderivative.
  TruncSeries<Real> envelope_W;
  TruncSeries<Real> envelope_integral;
  ParityHint parity = ParityHint::none;

  /// q0(x; E) at a numeric energy.
  TruncSeries<Real> q0(const Real& E) const {
    const std::size_t d = std::max(q0_base.degree(), q0_E.degree());
    return series_add(truncated(q0_base, d), series_scale(truncated(q0_E, d), E));
  }

  friend bool operator==(const RegularProblem&, const RegularProblem&) = default;
};

namespace detail {

template <class Real>
bool only_powers_of_parity(const TruncSeries<Real>& s, std::size_t parity) {
  for (std::size_t i = 0; i <= s.degree(); ++i)
    if (i % 2 != parity && s[i] != 0)
      return false;
  return true;
}

} // namespace detail

/// Throws ContractError if an even-potential hint contradicts the coefficients.
template <class Real>
void validate(const RegularProblem<Real>& problem) {
  if (problem.parity != ParityHint::even_potential)
    return;
  if (!detail::only_powers_of_parity(problem.p0, 1))
    throw ContractError("even-potential problem '" + problem.name + "': p0 must contain only odd powers");
  if (!detail::only_powers_of_parity(problem.q0_base, 0) || !detail::only_powers_of_parity(problem.q0_E, 0))
    throw ContractError("even-potential problem '" + problem.name + "': q0 must contain only even powers");
}

/// The sequences p_n(0), q_n(0) for n = 0..m at one energy.
template <class Real = BigReal>
struct PQTrace {
  int m = 0;
  std::vector<Real> p_at_0;
  std::vector<Real> q_at_0;
  Real E{0};
  ParityHint parity = ParityHint::none;
  /// p_m(x), q_m(x) when requested from iterate_pq (degree 2 after re-truncation).
  std::optional<TruncSeries<Real>> p_final;
  std::optional<TruncSeries<Real>> q_final;
};

/// Runs the recurrence m steps at energy E.
///
/// Step n keeps p_n, q_n only up to degree m + 2 - n: higher terms cannot
/// reach the constant terms of steps <= m, so the recorded values are exact
/// with respect to the untruncated recurrence.
template <class Real>
PQTrace<Real> iterate_pq(const RegularProblem<Real>& problem, const Real& E, int m, bool retain_final = false) {
  if (m < 2)
    throw ContractError("iterate_pq: need m >= 2, got " + std::to_string(m));
  if (!is_finite(E))
    throw ContractError("iterate_pq: energy is not finite");

  const auto top = static_cast<std::size_t>(m) + 2;
  const TruncSeries<Real> p0 = truncated(problem.p0, top);
  const TruncSeries<Real> q0 = truncated(problem.q0(E), top);

  PQTrace<Real> trace;
  trace.m = m;
  trace.E = E;
  trace.parity = problem.parity;
  trace.p_at_0.reserve(m + 1);
  trace.q_at_0.reserve(m + 1);

  TruncSeries<Real> p = p0;
  TruncSeries<Real> q = q0;
  trace.p_at_0.push_back(p[0]);
  trace.q_at_0.push_back(q[0]);

  for (int n = 1; n <= m; ++n) {
    const std::size_t d = top - n;
    const TruncSeries<Real> dp = series_diff(p); // degree d
    const TruncSeries<Real> dq = series_diff(q);
    TruncSeries<Real> p_next = series_mul_trunc(p0, p, d);
    TruncSeries<Real> q_next = series_mul_trunc(q0, p, d);
    for (std::size_t i = 0; i <= d; ++i) {
      p_next[i] += dp[i] + q[i];
      q_next[i] += dq[i];
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (!is_finite(p_next[i]) || !is_finite(q_next[i]))
        throw NumericError("iterate_pq: exponent range exceeded at step n = " + std::to_string(n));
    }
    p = std::move(p_next);
    q = std::move(q_next);
    trace.p_at_0.push_back(p[0]);
    trace.q_at_0.push_back(q[0]);
  }
  if (retain_final) {
    trace.p_final = p;
    trace.q_final = q;
  }
  return trace;
}

/// delta_m = q_m(0) p_{m-1}(0) - p_m(0) q_{m-1}(0).
template <class Real>
Real delta(const PQTrace<Real>& trace) {
  if (trace.m < 2)
    throw ContractError("delta: trace too short");
  const auto m = static_cast<std::size_t>(trace.m);
  return trace.q_at_0[m] * trace.p_at_0[m - 1] - trace.p_at_0[m] * trace.q_at_0[m - 1];
}

/// Single-sector functional of a parity problem: q_m(0) for even states,
/// p_m(0) for odd states. For odd m the even-sector value is a structural
/// zero (and vice versa), so callers pick m of the matching parity.
template <class Real>
Real delta_parity(const PQTrace<Real>& trace, Parity parity) {
  if (trace.parity != ParityHint::even_potential)
    throw ContractError("delta_parity: problem has no even-potential symmetry");
  const auto m = static_cast<std::size_t>(trace.m);
  return parity == Parity::even ? trace.q_at_0[m] : trace.p_at_0[m];
}

/// Non-trivial (f(0), f'(0)) solving q_r(0) f(0) + p_r(0) f'(0) = 0 for the
/// better-conditioned of rows r = m, m-1.
///
/// At an eigenvalue one of the two rows may vanish as a whole (e.g. for an
/// even state with m even, p_m(0) = 0 structurally and q_m(0) ~ 0). Rows are
/// ranked by their growth |row_r| / |row_{r-2}|; the vanishing row shows up
/// as an anomalously small ratio. The result is scaled so that its largest
/// component is exactly +1.
template <class Real>
std::pair<Real, Real> boundary_from_trace(const PQTrace<Real>& trace) {
  if (trace.m < 2)
    throw ContractError("boundary_from_trace: trace too short");
  const auto row_log = [&](int r) {
    const auto i = static_cast<std::size_t>(r);
    return std::max(log10_abs(trace.q_at_0[i]), log10_abs(trace.p_at_0[i]));
  };
  const auto score = [&](int r) {
    const double here = row_log(r);
    if (r < 2 || !std::isfinite(here))
      return here;
    const double before = row_log(r - 2);
    return std::isfinite(before) ? here - before : here;
  };

  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double s_m = row_log(trace.m) == neg_inf ? neg_inf : score(trace.m);
  const double s_prev = row_log(trace.m - 1) == neg_inf ? neg_inf : score(trace.m - 1);
  if (s_m == neg_inf && s_prev == neg_inf)
    throw NumericError("boundary_from_trace: indeterminate boundary (rows m and m-1 vanish)");

  using std::abs;
  const auto row = static_cast<std::size_t>(s_m >= s_prev ? trace.m : trace.m - 1);
  Real f0 = trace.p_at_0[row];
  Real f1 = -trace.q_at_0[row];
  const Real scale = abs(f0) >= abs(f1) ? f0 : f1;
  f0 /= scale;
  f1 /= scale;
  return {f0, f1};
}

/// Quantization functional at Taylor order k (delta_{k-2}); its sign
/// changes in E bracket eigenvalues.
template <class Real>
Real regular_quantization(const RegularProblem<Real>& problem, const Real& E, int order) {
  if (order < 4)
    throw ContractError("regular_quantization: order must be at least 4, got " + std::to_string(order));
  return delta(iterate_pq(problem, E, order - 2));
}

} // namespace atem

#endif // ATEM_REGULAR_HPP
