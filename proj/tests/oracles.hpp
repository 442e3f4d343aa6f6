// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for the test suites. None of these
// share code with the library recurrences: they work on plain Taylor
// coefficients or on bivariate polynomials in (x, E) over the rationals.

#ifndef ATEM_TESTS_ORACLES_HPP
#define ATEM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "atem/big_real.hpp"

namespace atem::oracle {

/// Ascending coefficients.
using Poly = std::vector<Rational>;

inline Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

inline Rational coeff(const Poly& p, int i) {
  return i >= 0 && static_cast<std::size_t>(i) < p.size() ? p[static_cast<std::size_t>(i)] : Rational(0);
}

/// Maclaurin coefficients c_0..c_N of the solution of f'' = p0 f' + q0 f with
/// f(0) = a, f'(0) = b, by matching powers of x directly.
inline Poly series_solution(const Poly& p0, const Poly& q0, const Rational& a, const Rational& b, int N) {
  Poly c(static_cast<std::size_t>(N) + 1, Rational(0));
  c[0] = a;
  if (N >= 1)
    c[1] = b;
  for (int n = 0; n + 2 <= N; ++n) {
    Rational rhs(0);
    for (int i = 0; i <= n; ++i) {
      rhs += coeff(p0, i) * (n - i + 1) * c[static_cast<std::size_t>(n - i + 1)];
      rhs += coeff(q0, i) * c[static_cast<std::size_t>(n - i)];
    }
    c[static_cast<std::size_t>(n + 2)] = rhs / ((n + 2) * (n + 1));
  }
  return c;
}

/// Quantum-dot coefficients from the closed three-term form
/// (n+1)(n+2l+1) t_{n+1} = -lambda t_n + (omega (n-1) - E) t_{n-1}, t_0 = 1.
template <class Real>
std::vector<Real> dot_coefficients(const Real& omega, const Real& lambda, const Real& ell, const Real& E, int m) {
  std::vector<Real> t(static_cast<std::size_t>(m) + 1, Real(0));
  t[0] = Real(1);
  for (int n = 0; n < m; ++n) {
    Real rhs = -lambda * t[static_cast<std::size_t>(n)];
    if (n >= 1)
      rhs += (omega * (n - 1) - E) * t[static_cast<std::size_t>(n - 1)];
    t[static_cast<std::size_t>(n + 1)] = rhs / (Real(n + 1) * (Real(n + 1) + ell * 2));
  }
  return t;
}

/// Polynomial in x and E: c[i][j] multiplies x^i E^j.
struct BiPoly {
  std::vector<std::vector<Rational>> c;

  static BiPoly from_x(const Poly& p, int e_power = 0) {
    BiPoly r;
    for (const auto& v : p) {
      std::vector<Rational> row(static_cast<std::size_t>(e_power) + 1, Rational(0));
      row.back() = v;
      r.c.push_back(row);
    }
    return r;
  }

  Rational at(std::size_t i, std::size_t j) const {
    return i < c.size() && j < c[i].size() ? c[i][j] : Rational(0);
  }

  void put(std::size_t i, std::size_t j, const Rational& v) {
    if (c.size() <= i)
      c.resize(i + 1);
    if (c[i].size() <= j)
      c[i].resize(j + 1, Rational(0));
    c[i][j] += v;
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      for (std::size_t j = 0; j < b.c[i].size(); ++j)
        r.put(i, j, b.c[i][j]);
    return r;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < a.c[i].size(); ++j)
        if (a.c[i][j] != 0)
          for (std::size_t k = 0; k < b.c.size(); ++k)
            for (std::size_t l = 0; l < b.c[k].size(); ++l)
              r.put(i + k, j + l, a.c[i][j] * b.c[k][l]);
    return r;
  }

  BiPoly dx() const {
    BiPoly r;
    for (std::size_t i = 1; i < c.size(); ++i)
      for (std::size_t j = 0; j < c[i].size(); ++j)
        r.put(i - 1, j, c[i][j] * static_cast<long>(i));
    return r;
  }

  /// The x^0 row as a polynomial in E.
  Poly at_origin() const { return c.empty() ? Poly{} : c[0]; }
};

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  return r;
}

inline Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size())
    a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  return a;
}

/// delta_m as an exact polynomial in E, from the untruncated symbolic
/// recurrence with q0 = q0_base(x) + E q0_E(x).
inline Poly delta_in_E(const Poly& p0, const Poly& q0_base, const Poly& q0_E, int m) {
  const BiPoly P0 = BiPoly::from_x(p0);
  const BiPoly Q0 = BiPoly::from_x(q0_base) + BiPoly::from_x(q0_E, 1);
  std::vector<BiPoly> p{P0}, q{Q0};
  for (int n = 1; n <= m; ++n) {
    p.push_back(P0 * p.back() + p.back().dx() + q.back());
    q.push_back(Q0 * p[p.size() - 2] + q.back().dx());
  }
  const auto M = static_cast<std::size_t>(m);
  return poly_sub(poly_mul(q[M].at_origin(), p[M - 1].at_origin()), poly_mul(p[M].at_origin(), q[M - 1].at_origin()));
}

template <class Real>
Real horner(const Poly& p, const Real& x) {
  Real acc(0);
  for (std::size_t i = p.size(); i-- > 0;)
    acc = acc * x + Real(p[i]);
  return acc;
}

} // namespace atem::oracle

#endif // ATEM_TESTS_ORACLES_HPP
