// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file frobenius.hpp
/// Taylor-coefficient recurrence for A(x) f'' + B(x) f' + C(x; E) f = 0 with
/// polynomial coefficients, including a regular singular point A(0) = 0.
///
/// Matching the coefficient of x^n (equivalently: differentiating n times at
/// the origin and dividing by n!) gives
///
///     sum_i a_i (n-i+2)(n-i+1) t_{n-i+2} + sum_i b_i (n-i+1) t_{n-i+1}
///       + sum_i c_i t_{n-i} = 0,
///
/// which is solved for t_{n+2} when a_0 != 0 and for t_{n+1} (coefficient
/// (n+1)(n a_1 + b_0)) when a_0 = 0. The pole-free polynomial form stays well
/// defined at the expansion point where -B/A and -C/A are singular.

#ifndef ATEM_FROBENIUS_HPP
#define ATEM_FROBENIUS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "atem/big_real.hpp"
#include "atem/error.hpp"
#include "atem/series.hpp"

namespace atem {

/// psi(x) = x^power exp(-gauss x^2) f(x) on x >= 0.
template <class Real = BigReal>
struct RadialEnvelope {
  Real power{0};
  Real gauss{0};
  friend bool operator==(const RadialEnvelope&, const RadialEnvelope&) = default;
};

/// Bookkeeping for the quantum-dot energy E_r = E_n + (|l| + 1) hbar_omega + L_r omega_c / 2.
template <class Real = BigReal>
struct EnergyOffset {
  Real ell{0};
  Real hbar_omega{1};
  Real omega_c{0};
  Real L_r{0};

  Real relative_energy(const Real& E_n) const {
    using std::abs;
    return E_n + (abs(ell) + 1) * hbar_omega + L_r * omega_c / 2;
  }
  friend bool operator==(const EnergyOffset&, const EnergyOffset&) = default;
};

template <class Real = BigReal>
struct SingularProblem {
  std::string name;
  TruncSeries<Real> A;
  TruncSeries<Real> B;
  TruncSeries<Real> C_base;
  TruncSeries<Real> C_E;
  RadialEnvelope<Real> envelope;
  EnergyOffset<Real> offset;

  TruncSeries<Real> C(const Real& E) const {
    const std::size_t d = std::max(C_base.degree(), C_E.degree());
    return series_add(truncated(C_base, d), series_scale(truncated(C_E, d), E));
  }

  /// True when the origin is a singular point (A(0) = 0).
  bool singular_at_origin() const { return A[0] == 0; }

  friend bool operator==(const SingularProblem&, const SingularProblem&) = default;
};

/// Radial quantum-dot equation -r f'' + (omega r^2 - (2l+1)) f' - (E r + lambda) f = 0
/// for u(r) = r^(l+1/2) exp(-omega r^2 / 4) f(r). No parameter validation.
template <class Real>
SingularProblem<Real> quantum_dot_problem(const Real& omega, const Real& lambda, const Real& ell) {
  SingularProblem<Real> p;
  p.name = "quantum_dot";
  p.A = TruncSeries<Real>{Real(0), Real(-1)};
  p.B = TruncSeries<Real>{-(ell * 2 + 1), Real(0), omega};
  p.C_base = TruncSeries<Real>{-lambda};
  p.C_E = TruncSeries<Real>{Real(0), Real(-1)};
  p.envelope.power = ell + Real(1) / 2;
  p.envelope.gauss = omega / 4;
  p.offset.ell = ell;
  return p;
}

/// Checks that every step n <= m of the recurrence can be solved. Throws
/// NumericError naming the first resonant n.
template <class Real>
void check_indicial(const SingularProblem<Real>& problem, int m) {
  if (!problem.singular_at_origin())
    return;
  const Real a1 = problem.A.coeff(1);
  const Real b0 = problem.B.coeff(0);
  for (int n = 0; n <= m; ++n) {
    if (a1 * static_cast<long>(n) + b0 == 0)
      throw NumericError("resonant indicial exponent at n = " + std::to_string(n) + " in problem '" +
                         problem.name + "'");
  }
}

/// Taylor coefficients t_0..t_m of the analytic solution at one energy.
template <class Real = BigReal>
struct CoeffTrace {
  int m = 0;
  std::vector<Real> t;
  Real E{0};
  Real lambda{0};
};

/// Solves the coefficient recurrence up to t_m with t_0 = 1.
///
/// At a regular singular point the second constant is fixed by the n = 0
/// relation. At an ordinary point (A(0) != 0) the caller supplies t_1.
template <class Real>
CoeffTrace<Real> leibniz_recurrence(const SingularProblem<Real>& problem, const Real& E, int m,
                                    std::optional<Real> t1 = std::nullopt) {
  if (m < 2)
    throw ContractError("leibniz_recurrence: need m >= 2, got " + std::to_string(m));
  const bool singular = problem.singular_at_origin();
  if (!singular && !t1)
    throw ContractError("leibniz_recurrence: ordinary point needs an explicit t1");
  if (singular && t1)
    throw ContractError("leibniz_recurrence: t1 is fixed by the singular point and cannot be supplied");

  const TruncSeries<Real>& A = problem.A;
  const TruncSeries<Real>& B = problem.B;
  const TruncSeries<Real> C = problem.C(E);

  CoeffTrace<Real> trace;
  trace.m = m;
  trace.E = E;
  trace.lambda = -problem.C_base.coeff(0);
  trace.t.assign(static_cast<std::size_t>(m) + 1, Real(0));
  std::vector<Real>& t = trace.t;
  t[0] = Real(1);

  // Unknown index solved from the x^n relation: n+2 at an ordinary point,
  // n+1 at the singular point.
  const int shift = singular ? 1 : 2;
  if (!singular)
    t[1] = *t1;

  for (int n = 0; n + shift <= m; ++n) {
    const int top = n + shift;
    Real lead(0);
    Real rest(0);
    for (std::size_t i = 0; i <= A.degree(); ++i) {
      const int j = n - static_cast<int>(i) + 2;
      if (j < 0 || A[i] == 0)
        continue;
      const Real term = A[i] * static_cast<long>(j) * static_cast<long>(j - 1);
      if (j == top)
        lead += term;
      else if (j < top)
        rest += term * t[j];
    }
    for (std::size_t i = 0; i <= B.degree(); ++i) {
      const int j = n - static_cast<int>(i) + 1;
      if (j < 0 || B[i] == 0)
        continue;
      const Real term = B[i] * static_cast<long>(j);
      if (j == top)
        lead += term;
      else
        rest += term * t[j];
    }
    for (std::size_t i = 0; i <= C.degree(); ++i) {
      const int j = n - static_cast<int>(i);
      if (j < 0 || C[i] == 0)
        continue;
      rest += C[i] * t[j];
    }
    if (lead == 0)
      throw NumericError("resonant indicial exponent at n = " + std::to_string(n) + " in problem '" +
                         problem.name + "'");
    t[top] = -rest / lead;
    if (!is_finite(t[top]))
      throw NumericError("leibniz_recurrence: exponent range exceeded at n = " + std::to_string(n));
  }
  return trace;
}

/// Floor for the normalization of delta_singular.
template <class Real>
Real singular_floor() {
  return from_decimal<Real>("1e-300");
}

/// Tail coefficient t_m / max(|t_{m-1}|, |t_{m-2}|, 1e-300); its roots in E
/// are where the Taylor polynomial terminates at degree m - 1.
template <class Real>
Real delta_singular(const CoeffTrace<Real>& trace) {
  if (trace.m < 2)
    throw ContractError("delta_singular: trace too short");
  using std::abs;
  const auto m = static_cast<std::size_t>(trace.m);
  Real scale = abs(trace.t[m - 1]);
  const Real prev = abs(trace.t[m - 2]);
  if (prev > scale)
    scale = prev;
  const Real floor = singular_floor<Real>();
  if (floor > scale)
    scale = floor;
  return trace.t[m] / scale;
}

/// Product of the normalized tail coefficients of orders m and m-1. Sign
/// changes of this functional are the union of the roots of t_m and
/// t_{m-1}, the singular-route counterpart of the two-row termination system
/// used for regular problems.
template <class Real>
Real delta_singular_pair(const CoeffTrace<Real>& trace) {
  if (trace.m < 3)
    throw ContractError("delta_singular_pair: trace too short");
  CoeffTrace<Real> shorter = trace;
  shorter.m = trace.m - 1;
  shorter.t.pop_back();
  return delta_singular(trace) * delta_singular(shorter);
}

/// Quantization functional at Taylor order k for singular problems.
template <class Real>
Real singular_quantization(const SingularProblem<Real>& problem, const Real& E, int order) {
  if (order < 3)
    throw ContractError("singular_quantization: order must be at least 3, got " + std::to_string(order));
  return delta_singular_pair(leibniz_recurrence(problem, E, order));
}

} // namespace atem

#endif // ATEM_FROBENIUS_HPP
