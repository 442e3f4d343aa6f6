// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file big_real.hpp
/// Extended-precision scalar used throughout the solver, plus the handful of
/// scalar helpers the templated algorithms need (sign, log-magnitude, exact
/// decimal parsing) so they also run over `double` and exact rationals.

#ifndef ATEM_BIG_REAL_HPP
#define ATEM_BIG_REAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

#include "atem/error.hpp"

namespace atem {

/// Binary floating point with run-time precision and an exponent range far
/// beyond 10^±10000 (MPFR).
using BigReal = boost::multiprecision::mpfr_float;

/// Exact rational, used by test oracles and the exact quasi-exact check.
using Rational = boost::multiprecision::mpq_rational;

inline constexpr unsigned kDefaultPrecisionBits = 192;

/// Sets the working precision of newly created BigReal values for the
/// lifetime of the scope and restores the previous setting afterwards.
///
/// The MPFR backend keeps one process-wide default, so a scope must not be
/// opened concurrently from several threads.
class PrecisionScope {
public:
  explicit PrecisionScope(unsigned bits = kDefaultPrecisionBits)
      : saved_digits10_(BigReal::default_precision()) {
    if (bits < 24)
      throw ContractError("precision must be at least 24 bits, got " + std::to_string(bits));
    BigReal::default_precision(digits10_for_bits(bits));
    BigReal probe(1);
    bits_ = static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
  }
  ~PrecisionScope() { BigReal::default_precision(saved_digits10_); }

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  /// Actual mantissa width in bits (at least the requested width).
  unsigned bits() const noexcept { return bits_; }

  static unsigned digits10_for_bits(unsigned bits) noexcept {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
  }

private:
  unsigned saved_digits10_;
  unsigned bits_ = 0;
};

/// Mantissa width in bits, or 0 for scalars without a notion of precision.
template <class Real>
long precision_of(const Real&) noexcept {
  return 0;
}
inline long precision_of(const BigReal& x) noexcept {
  return static_cast<long>(mpfr_get_prec(x.backend().data()));
}

template <class Real>
int sign_of(const Real& x) {
  return (x > 0) - (x < 0);
}

template <class Real>
bool is_finite(const Real& x) {
  if constexpr (std::is_floating_point_v<Real>)
    return std::isfinite(x);
  else if constexpr (std::is_same_v<Real, BigReal>)
    return mpfr_number_p(x.backend().data()) != 0;
  else
    return true;
}

/// log10 |x| as a double; -infinity for an exact zero. Safe for magnitudes
/// far outside the double range.
inline double log10_abs(const BigReal& x) {
  if (x == 0)
    return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpfr_get_d_2exp(&exp2, x.backend().data(), MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
}
inline double log10_abs(double x) { return std::log10(std::fabs(x)); }
inline double log10_abs(const Rational& x) {
  if (x == 0)
    return -std::numeric_limits<double>::infinity();
  BigReal v(x);
  return log10_abs(v);
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_floating_point_v<Real>)
    return static_cast<double>(x);
  else
    return x.template convert_to<double>();
}

/// Exact decimal literal (e.g. "-1.25e-3") to a rational.
inline Rational rational_from_decimal(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw SpecError("invalid decimal literal '" + s + "'"); };
  if (s.empty())
    fail();
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point)
        ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit)
    fail();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E')
      fail();
    ++pos;
    const std::string exp_text = s.substr(pos);
    if (exp_text.empty())
      fail();
    char* end = nullptr;
    exponent = std::strtol(exp_text.c_str(), &end, 10);
    if (*end != '\0')
      fail();
  }
  exponent -= frac_digits;
  if (exponent > 100000 || exponent < -100000)
    fail();
  using boost::multiprecision::mpz_int;
  mpz_int numerator(digits);
  mpz_int ten_pow = boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(numerator * ten_pow) : Rational(numerator, ten_pow);
  return negative ? Rational(-value) : value;
}

/// Parses a decimal literal straight into the working precision (no detour
/// through binary double).
template <class Real>
Real from_decimal(std::string_view text) {
  if constexpr (std::is_same_v<Real, Rational>) {
    return rational_from_decimal(text);
  } else if constexpr (std::is_same_v<Real, BigReal>) {
    rational_from_decimal(text); // validates the literal
    return BigReal(std::string(text));
  } else {
    rational_from_decimal(text);
    return static_cast<Real>(std::strtod(std::string(text).c_str(), nullptr));
  }
}

/// Scientific notation with `digits` significant digits.
inline std::string to_scientific(const BigReal& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

/// Fixed notation with `decimals` digits after the point, rounded from full
/// precision.
inline std::string to_fixed(const BigReal& x, int decimals) {
  return x.str(decimals, std::ios_base::fixed);
}

/// Decimal text that parses back to the identical value at the same precision.
inline std::string to_exact_decimal(const BigReal& x) {
  if (x == 0)
    return "0";
  const long bits = precision_of(x);
  const int digits = static_cast<int>(std::ceil(bits * 0.30102999566398120)) + 2;
  return x.str(digits, std::ios_base::scientific);
}

} // namespace atem

#endif // ATEM_BIG_REAL_HPP
