// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file quasi_exact.hpp
/// Closed-form quasi-exact coupling constants of the quantum-dot equation and
/// an exact check that the coefficient recurrence terminates for them.

#ifndef ATEM_QUASI_EXACT_HPP
#define ATEM_QUASI_EXACT_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "atem/algebraic.hpp"
#include "atem/big_real.hpp"
#include "atem/error.hpp"
#include "atem/frobenius.hpp"

namespace atem {

namespace detail {

inline void require_quasi_exact_args(int j) {
  if (j < 1 || j > 3)
    throw ContractError("unsupported quasi-exact level j = " + std::to_string(j) + " (supported: 1, 2, 3)");
}

} // namespace detail

/// lambda values for which E = j omega carries a polynomial solution of
/// degree j, in ascending order.
///
///   j = 1: ±sqrt(omega (2l+1))
///   j = 2: 0, ±sqrt(2 omega (4l+3))
///   j = 3: ±sqrt(10 omega (l+1) ± omega sqrt(73 + 128 l + 64 l^2))
///
/// lambda = 0 belongs to j = 2 only: t_{j+1} as a polynomial in lambda has
/// parity (-1)^(j+1), and for j = 3 its constant term is
/// omega^2 (36 l^2 + 72 l + 27) != 0.
template <class Real>
std::vector<Real> quasi_exact_lambdas(const Real& ell, const Real& omega, int j) {
  detail::require_quasi_exact_args(j);
  if (!(omega > 0))
    throw ContractError("quasi_exact_lambdas: omega must be positive");
  if (!(ell * 2 > -1))
    throw ContractError("quasi_exact_lambdas: l must exceed -1/2");
  using std::sqrt;
  std::vector<Real> out;
  auto add_pair = [&](const Real& square) {
    const Real r = sqrt(square);
    out.push_back(-r);
    out.push_back(r);
  };
  switch (j) {
  case 1:
    add_pair(omega * (ell * 2 + 1));
    break;
  case 2:
    out.push_back(Real(0));
    add_pair(omega * (ell * 4 + 3) * 2);
    break;
  default: {
    const Real inner = sqrt(ell * ell * 64 + ell * 128 + 73);
    const Real base = omega * (ell + 1) * 10;
    add_pair(base + omega * inner);
    add_pair(base - omega * inner);
    break;
  }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Monic polynomial in lambda whose roots are the nonzero quasi-exact
/// couplings at level j (ascending coefficients).
inline std::vector<Rational> quasi_exact_modulus(const Rational& ell, const Rational& omega, int j) {
  detail::require_quasi_exact_args(j);
  switch (j) {
  case 1:
    return {-(omega * (2 * ell + 1)), Rational(0), Rational(1)};
  case 2:
    return {-(2 * omega * (4 * ell + 3)), Rational(0), Rational(1)};
  default: {
    // (lambda^2 - 10 omega (l+1))^2 = omega^2 (73 + 128 l + 64 l^2)
    const Rational b = 10 * omega * (ell + 1);
    const Rational disc = omega * omega * (73 + 128 * ell + 64 * ell * ell);
    return {b * b - disc, Rational(0), -2 * b, Rational(0), Rational(1)};
  }
  }
}

struct QuasiExactEntry {
  BigReal lambda;
  /// Exact arithmetic: t_n == 0 for all j < n <= m.
  bool terminates = false;
  /// Largest log10 |t_n| (j < n <= m) of the same recurrence in BigReal.
  double tail_log10 = 0;
};

struct QuasiExactReport {
  int j = 0;
  Rational E;
  int m = 0;
  std::vector<QuasiExactEntry> entries;
  /// For j = 1: t_1^2 == omega / (2l+1) and sign(t_1) == -sign(lambda), exactly.
  bool linear_coefficient_matches = true;

  bool all_pass() const {
    return linear_coefficient_matches &&
           std::all_of(entries.begin(), entries.end(), [](const QuasiExactEntry& e) { return e.terminates; });
  }
};

/// Runs the recurrence at E = j omega up to t_m for every closed-form lambda,
/// once in exact arithmetic over Q[lambda]/(P) and once in BigReal.
inline QuasiExactReport verify_quasi_exact(const Rational& ell, const Rational& omega, int j, int m = 40) {
  detail::require_quasi_exact_args(j);
  if (m <= j + 1)
    throw ContractError("verify_quasi_exact: m must exceed j + 1");
  if (omega <= 0 || 2 * ell <= -1)
    throw ContractError("verify_quasi_exact: need omega > 0 and l > -1/2");

  QuasiExactReport report;
  report.j = j;
  report.E = j * omega;
  report.m = m;

  auto exact_terminates = [&](const AlgebraicNumber& lambda) {
    const auto problem = quantum_dot_problem<AlgebraicNumber>(omega, lambda, ell);
    const auto trace = leibniz_recurrence(problem, AlgebraicNumber(report.E), m);
    for (int n = j + 1; n <= m; ++n)
      if (!trace.t[static_cast<std::size_t>(n)].is_zero())
        return false;
    return true;
  };

  const auto modulus = AlgebraicNumber::make_modulus(quasi_exact_modulus(ell, omega, j));
  const AlgebraicNumber lambda_sym = AlgebraicNumber::generator(modulus);
  const bool nonzero_branch = exact_terminates(lambda_sym);
  const bool zero_branch = j == 2 ? exact_terminates(AlgebraicNumber(0)) : false;

  if (j == 1) {
    const auto problem = quantum_dot_problem<AlgebraicNumber>(omega, lambda_sym, ell);
    const auto trace = leibniz_recurrence(problem, AlgebraicNumber(report.E), m);
    const AlgebraicNumber& t1 = trace.t[1];
    const bool square_ok = t1 * t1 == AlgebraicNumber(omega / (2 * ell + 1));
    const AlgebraicNumber signed_product = t1 * lambda_sym;
    const bool sign_ok = signed_product.is_rational() && signed_product.rational_value() < 0;
    report.linear_coefficient_matches = square_ok && sign_ok;
  }

  const BigReal ell_r(ell);
  const BigReal omega_r(omega);
  for (const BigReal& lambda : quasi_exact_lambdas(ell_r, omega_r, j)) {
    QuasiExactEntry entry;
    entry.lambda = lambda;
    entry.terminates = lambda == 0 ? zero_branch : nonzero_branch;
    const auto problem = quantum_dot_problem<BigReal>(omega_r, lambda, ell_r);
    const auto trace = leibniz_recurrence(problem, BigReal(report.E), m);
    double worst = -std::numeric_limits<double>::infinity();
    for (int n = j + 1; n <= m; ++n)
      worst = std::max(worst, log10_abs(trace.t[static_cast<std::size_t>(n)]));
    entry.tail_log10 = worst;
    report.entries.push_back(entry);
  }
  return report;
}

} // namespace atem

#endif // ATEM_QUASI_EXACT_HPP
