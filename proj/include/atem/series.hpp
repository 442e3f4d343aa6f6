// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file series.hpp
/// Truncated power series c_0 + c_1 x + ... + c_D x^D with dense storage.

#ifndef ATEM_SERIES_HPP
#define ATEM_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "atem/big_real.hpp"
#include "atem/error.hpp"

namespace atem {

template <class Real = BigReal>
class TruncSeries {
public:
  using value_type = Real;

  /// Zero series of the given truncation degree.
  explicit TruncSeries(std::size_t degree = 0) : coeffs_(degree + 1, Real(0)) {}

  /// Coefficients in ascending powers; the degree is `coeffs.size() - 1`.
  explicit TruncSeries(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      coeffs_.emplace_back(0);
  }

  TruncSeries(std::initializer_list<Real> coeffs) : TruncSeries(std::vector<Real>(coeffs)) {}

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }

  const Real& operator[](std::size_t i) const { return coeffs_[i]; }
  Real& operator[](std::size_t i) { return coeffs_[i]; }

  /// Coefficient of x^i; zero beyond the truncation degree.
  Real coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Real(0); }

  const std::vector<Real>& coeffs() const noexcept { return coeffs_; }

  /// Highest index carrying a nonzero coefficient (0 for the zero series).
  std::size_t effective_degree() const {
    std::size_t d = degree();
    while (d > 0 && coeffs_[d] == 0)
      --d;
    return d;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Real& c) { return c == 0; });
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
  std::vector<Real> coeffs_;
};

namespace detail {

template <class Real>
void require_same_precision(const TruncSeries<Real>& a, const TruncSeries<Real>& b, const char* op) {
  const long pa = precision_of(a[0]);
  const long pb = precision_of(b[0]);
  if (pa != pb)
    throw ContractError(std::string(op) + ": operands carry different precisions (" + std::to_string(pa) +
                        " vs " + std::to_string(pb) + " bits)");
}

} // namespace detail

/// Same coefficients padded with zeros or cut to `degree`.
template <class Real>
TruncSeries<Real> truncated(const TruncSeries<Real>& a, std::size_t degree) {
  std::vector<Real> c(degree + 1, Real(0));
  const std::size_t n = std::min(degree, a.degree()) + 1;
  std::copy_n(a.coeffs().begin(), n, c.begin());
  return TruncSeries<Real>(std::move(c));
}

template <class Real>
TruncSeries<Real> series_add(const TruncSeries<Real>& a, const TruncSeries<Real>& b) {
  if (a.degree() != b.degree())
    throw ContractError("series_add: degree mismatch (" + std::to_string(a.degree()) + " vs " +
                        std::to_string(b.degree()) + ")");
  detail::require_same_precision(a, b, "series_add");
  std::vector<Real> c(a.degree() + 1);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = a[i] + b[i];
  return TruncSeries<Real>(std::move(c));
}

template <class Real>
TruncSeries<Real> series_sub(const TruncSeries<Real>& a, const TruncSeries<Real>& b) {
  if (a.degree() != b.degree())
    throw ContractError("series_sub: degree mismatch");
  detail::require_same_precision(a, b, "series_sub");
  std::vector<Real> c(a.degree() + 1);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = a[i] - b[i];
  return TruncSeries<Real>(std::move(c));
}

template <class Real>
TruncSeries<Real> series_scale(const TruncSeries<Real>& a, const Real& s) {
  std::vector<Real> c(a.degree() + 1);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = a[i] * s;
  return TruncSeries<Real>(std::move(c));
}

/// Cauchy product truncated at `degree`. Zero coefficients of `a` are
/// skipped, which makes products with sparse low-degree polynomials cheap.
template <class Real>
TruncSeries<Real> series_mul_trunc(const TruncSeries<Real>& a, const TruncSeries<Real>& b, std::size_t degree) {
  detail::require_same_precision(a, b, "series_mul_trunc");
  std::vector<Real> c(degree + 1, Real(0));
  const std::size_t na = std::min(a.degree(), degree);
  for (std::size_t i = 0; i <= na; ++i) {
    if (a[i] == 0)
      continue;
    const std::size_t nb = std::min(b.degree(), degree - i);
    for (std::size_t j = 0; j <= nb; ++j)
      c[i + j] += a[i] * b[j];
  }
  return TruncSeries<Real>(std::move(c));
}

/// Term-wise derivative; the degree drops by one (a constant maps to the
/// zero series of degree 0).
template <class Real>
TruncSeries<Real> series_diff(const TruncSeries<Real>& a) {
  if (a.degree() == 0)
    return TruncSeries<Real>(std::size_t{0});
  std::vector<Real> c(a.degree());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a[k + 1] * static_cast<long>(k + 1);
  return TruncSeries<Real>(std::move(c));
}

template <class Real>
const Real& series_eval_origin(const TruncSeries<Real>& a) {
  return a[0];
}

/// Horner evaluation at `x`.
template <class Real>
Real series_eval(const TruncSeries<Real>& a, const Real& x) {
  Real acc = a[a.degree()];
  for (std::size_t k = a.degree(); k-- > 0;)
    acc = acc * x + a[k];
  return acc;
}

/// Quotient a / b truncated at `degree`; requires b(0) != 0.
template <class Real>
TruncSeries<Real> series_div_trunc(const TruncSeries<Real>& a, const TruncSeries<Real>& b, std::size_t degree) {
  if (b[0] == 0)
    throw ContractError("series_div_trunc: divisor vanishes at the origin");
  std::vector<Real> c(degree + 1, Real(0));
  for (std::size_t k = 0; k <= degree; ++k) {
    Real s = a.coeff(k);
    for (std::size_t j = 1; j <= std::min(k, b.degree()); ++j)
      s -= b[j] * c[k - j];
    c[k] = s / b[0];
  }
  return TruncSeries<Real>(std::move(c));
}

/// Antiderivative with zero constant term, degree + 1.
template <class Real>
TruncSeries<Real> series_integrate(const TruncSeries<Real>& a) {
  std::vector<Real> c(a.degree() + 2, Real(0));
  for (std::size_t k = 0; k <= a.degree(); ++k)
    c[k + 1] = a[k] / static_cast<long>(k + 1);
  return TruncSeries<Real>(std::move(c));
}

} // namespace atem

#endif // ATEM_SERIES_HPP
