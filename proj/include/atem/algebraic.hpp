// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file algebraic.hpp
/// Exact arithmetic in Q[z]/(P(z)) for a monic rational polynomial P.
///
/// An element c_0 + c_1 z + ... + c_{d-1} z^{d-1} stands for the same
/// expression evaluated at every root of P simultaneously, so an element
/// that reduces to zero vanishes at all roots of a square-free P. Elements
/// without a modulus are plain rationals and combine with any modulus.

#ifndef ATEM_ALGEBRAIC_HPP
#define ATEM_ALGEBRAIC_HPP

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "atem/big_real.hpp"
#include "atem/error.hpp"

namespace atem {

class AlgebraicNumber {
public:
  /// Monic modulus, ascending coefficients, leading 1 included.
  using Modulus = std::shared_ptr<const std::vector<Rational>>;

  AlgebraicNumber() = default;
  AlgebraicNumber(long value) : coeffs_{Rational(value)} { trim(); }
  AlgebraicNumber(int value) : AlgebraicNumber(static_cast<long>(value)) {}
  AlgebraicNumber(Rational value) : coeffs_{std::move(value)} { trim(); }

  /// The class of z itself, i.e. a symbolic root of `modulus`.
  static AlgebraicNumber generator(Modulus modulus) {
    if (!modulus || modulus->size() < 2 || modulus->back() != 1)
      throw ContractError("AlgebraicNumber: modulus must be monic of degree >= 1");
    AlgebraicNumber z;
    z.modulus_ = std::move(modulus);
    z.coeffs_ = {Rational(0), Rational(1)};
    z.reduce();
    return z;
  }

  static Modulus make_modulus(std::vector<Rational> monic) {
    return std::make_shared<const std::vector<Rational>>(std::move(monic));
  }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Modulus& modulus() const noexcept { return modulus_; }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_rational() const noexcept { return coeffs_.size() <= 1; }
  Rational rational_value() const {
    if (!is_rational())
      throw ContractError("AlgebraicNumber: value is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  AlgebraicNumber operator-() const {
    AlgebraicNumber r = *this;
    for (auto& c : r.coeffs_)
      c = -c;
    return r;
  }

  AlgebraicNumber& operator+=(const AlgebraicNumber& o) {
    adopt_modulus(o);
    if (coeffs_.size() < o.coeffs_.size())
      coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
      coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  AlgebraicNumber& operator-=(const AlgebraicNumber& o) { return *this += -o; }

  AlgebraicNumber& operator*=(const AlgebraicNumber& o) {
    adopt_modulus(o);
    if (is_zero() || o.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    std::vector<Rational> prod(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        prod[i + j] += coeffs_[i] * o.coeffs_[j];
    coeffs_ = std::move(prod);
    reduce();
    return *this;
  }

  /// Division is only defined by nonzero rationals; the recurrences that run
  /// over this type divide by rational pivots only.
  AlgebraicNumber& operator/=(const AlgebraicNumber& o) {
    if (!o.is_rational() || o.is_zero())
      throw ContractError("AlgebraicNumber: division by a non-rational or zero element");
    adopt_modulus(o);
    const Rational d = o.rational_value();
    for (auto& c : coeffs_)
      c /= d;
    return *this;
  }

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return (a - b).is_zero();
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
      coeffs_.pop_back();
  }

  void adopt_modulus(const AlgebraicNumber& o) {
    if (!o.modulus_)
      return;
    if (!modulus_) {
      modulus_ = o.modulus_;
      reduce();
    } else if (modulus_ != o.modulus_ && *modulus_ != *o.modulus_) {
      throw ContractError("AlgebraicNumber: operands live in different extensions");
    }
  }

  void reduce() {
    if (modulus_) {
      const std::vector<Rational>& p = *modulus_;
      const std::size_t d = p.size() - 1;
      for (std::size_t k = coeffs_.size(); k-- > d;) {
        const Rational c = coeffs_[k];
        if (c == 0)
          continue;
        for (std::size_t i = 0; i <= d; ++i)
          coeffs_[k - d + i] -= c * p[i];
      }
      if (coeffs_.size() > d)
        coeffs_.resize(d);
    }
    trim();
  }

  std::vector<Rational> coeffs_;
  Modulus modulus_;
};

} // namespace atem

#endif // ATEM_ALGEBRAIC_HPP
