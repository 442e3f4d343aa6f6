// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "atem/series.hpp"
#include "properties.hpp"

namespace {

using atem::BigReal;
using atem::Rational;
using S = atem::TruncSeries<BigReal>;
using Q = atem::TruncSeries<Rational>;

TEST(Series, AddExamples) {
  EXPECT_EQ(atem::series_add(S{1, 2}, S{3, -2}), (S{4, 0}));
  const S a{1, -3, 5};
  EXPECT_EQ(atem::series_add(a, S(std::size_t{2})), a);
  EXPECT_TRUE(atem::series_add(S{0, 0, 1}, S{0, 0, -1}).is_zero());
}

TEST(Series, AddRejectsDegreeMismatch) {
  EXPECT_THROW(atem::series_add(S{1, 2}, S{1, 2, 3}), atem::ContractError);
}

TEST(Series, MixedPrecisionIsRejected) {
  S a{1, 2};
  S b;
  {
    atem::PrecisionScope low(64);
    b = S{BigReal(1), BigReal(2)};
  }
  EXPECT_THROW(atem::series_add(a, b), atem::ContractError);
  EXPECT_THROW(atem::series_mul_trunc(a, b, 1), atem::ContractError);
}

TEST(Series, MulExamples) {
  EXPECT_EQ(atem::series_mul_trunc(S{1, 2}, S{1, -1}, 2), (S{1, 1, -2}));
  const S a{3, 1, 4, 1, 5};
  EXPECT_EQ(atem::series_mul_trunc(a, S{1}, 4), a);
  EXPECT_EQ(atem::series_mul_trunc(a, S{1}, 2), atem::truncated(a, 2));
  EXPECT_TRUE(atem::series_mul_trunc(S{0, 1}, S{0, 1}, 1).is_zero());
}

TEST(Series, DiffExamples) {
  EXPECT_EQ(atem::series_diff(S{1, 2, 3}), (S{2, 6}));
  EXPECT_TRUE(atem::series_diff(S{5}).is_zero());
  EXPECT_EQ(atem::series_diff(S{0, 0, 0, 1}), (S{0, 0, 3}));
}

TEST(Series, EvalOrigin) {
  EXPECT_EQ(atem::series_eval_origin(S{3, -1, 0, 0, 7}), 3);
  EXPECT_EQ(atem::series_eval_origin(S(std::size_t{4})), 0);
  EXPECT_EQ(atem::series_eval(S{1, 2, 3}, BigReal(2)), 17);
}

TEST(Series, DivisionInvertsMultiplication) {
  const Q a{Rational(2), Rational(-1), Rational(3)};
  const Q b{Rational(1), Rational(1, 2), Rational(0), Rational(-4)};
  const auto quotient = atem::series_div_trunc(a, b, 12);
  EXPECT_EQ(atem::series_mul_trunc(quotient, b, 12), atem::truncated(a, 12));
  EXPECT_THROW(atem::series_div_trunc(a, Q{Rational(0), Rational(1)}, 3), atem::ContractError);
}

TEST(Series, IntegrateThenDiff) {
  const Q a{Rational(1), Rational(-2), Rational(7, 3)};
  EXPECT_EQ(atem::series_diff(atem::series_integrate(a)), a);
  EXPECT_EQ(atem::series_integrate(a)[0], 0);
}

TEST(SeriesProperties, RingLawsRational) {
  const auto c = atem::props::ring_laws<Rational>(1);
  EXPECT_TRUE(c.ok) << c.detail;
}

TEST(SeriesProperties, RingLawsBigReal) {
  const auto c = atem::props::ring_laws<BigReal>(2);
  EXPECT_TRUE(c.ok) << c.detail;
}

TEST(SeriesProperties, Leibniz) {
  const auto q = atem::props::leibniz_rule<Rational>(3);
  EXPECT_TRUE(q.ok) << q.detail;
  const auto b = atem::props::leibniz_rule<BigReal>(4);
  EXPECT_TRUE(b.ok) << b.detail;
}

TEST(SeriesProperties, TruncationCoherence) {
  const auto c = atem::props::truncation_coherence<BigReal>(5);
  EXPECT_TRUE(c.ok) << c.detail;
}

} // namespace
