// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "atem/regular.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace {

using atem::BigReal;
using atem::Rational;
using Q = atem::TruncSeries<Rational>;

atem::RegularProblem<Rational> exact_anharmonic(const Rational& g) {
  atem::RegularProblem<Rational> p;
  p.name = "anharmonic";
  p.p0 = Q{Rational(0), Rational(2)};
  p.q0_base = Q{Rational(1), Rational(0), Rational(0), Rational(0), g};
  p.q0_E = Q{Rational(-1)};
  p.parity = atem::ParityHint::even_potential;
  return p;
}

TEST(Regular, LowOrderClosedForms) {
  for (const Rational g : {Rational(0), Rational(1, 10), Rational(7, 3)}) {
    const auto problem = exact_anharmonic(g);
    for (const Rational E : {Rational(0), Rational(1, 2), Rational(3), Rational(-5, 7)}) {
      const auto t = atem::iterate_pq(problem, E, 2);
      EXPECT_EQ(t.p_at_0[1], 3 - E);
      EXPECT_EQ(t.q_at_0[1], 0);
      EXPECT_EQ(t.p_at_0[2], 0);
      EXPECT_EQ(t.q_at_0[2], (1 - E) * (5 - E));
      EXPECT_EQ(atem::delta(t), (1 - E) * (3 - E) * (5 - E));
      EXPECT_EQ(atem::delta_parity(t, atem::Parity::even), (1 - E) * (5 - E));
    }
  }
}

TEST(Regular, HarmonicGroundStatePropagatesZero) {
  const auto t = atem::iterate_pq(exact_anharmonic(Rational(0)), Rational(1), 30);
  for (const auto& q : t.q_at_0)
    EXPECT_EQ(q, 0);
}

TEST(Regular, HarmonicEigenvalueZeroesDelta) {
  const auto problem = exact_anharmonic(Rational(0));
  for (int m = 2; m <= 40; ++m)
    EXPECT_EQ(atem::delta(atem::iterate_pq(problem, Rational(3), m)), 0) << "m=" << m;
}

TEST(Regular, OddSectorConvergesToOddHarmonicLevels) {
  const auto problem = atem::props::anharmonic("0");
  for (const int level : {3, 7, 11}) {
    const auto t = atem::iterate_pq(problem, BigReal(level), 21);
    EXPECT_EQ(atem::delta_parity(t, atem::Parity::odd), 0) << "E=" << level;
  }
}

// p_n(0), q_n(0) are the (n+2)-th derivatives at 0 of the solutions with
// (f, f') = (0, 1) and (1, 0).
TEST(Regular, MatchesSeriesSolutionOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    atem::oracle::Poly p0, q0;
    for (int i = 0; i < 3 + trial % 3; ++i) {
      p0.push_back(Rational(coef(rng)));
      q0.push_back(Rational(coef(rng)));
    }
    const Rational E(coef(rng), 1 + trial);
    atem::RegularProblem<Rational> problem;
    problem.name = "random";
    problem.p0 = Q(p0);
    problem.q0_base = Q(q0);
    problem.q0_E = Q{Rational(-1)};
    atem::oracle::Poly q0_at_E = q0;
    q0_at_E[0] -= E;

    const int m = 24;
    const auto trace = atem::iterate_pq(problem, E, m);
    const auto fa = atem::oracle::series_solution(p0, q0_at_E, Rational(1), Rational(0), m + 2);
    const auto fb = atem::oracle::series_solution(p0, q0_at_E, Rational(0), Rational(1), m + 2);
    for (int n = 0; n <= m; ++n) {
      const auto i = static_cast<std::size_t>(n + 2);
      EXPECT_EQ(trace.q_at_0[static_cast<std::size_t>(n)], fa[i] * atem::oracle::factorial(n + 2));
      EXPECT_EQ(trace.p_at_0[static_cast<std::size_t>(n)], fb[i] * atem::oracle::factorial(n + 2));
    }
  }
}

// f^(n+2) = p_n f' + q_n f as series, for both fundamental solutions.
TEST(Regular, FullSeriesIdentity) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> coef(-2, 2);
  atem::oracle::Poly p0, q0;
  for (int i = 0; i < 4; ++i) {
    p0.push_back(Rational(coef(rng)));
    q0.push_back(Rational(coef(rng)));
  }
  atem::RegularProblem<Rational> problem;
  problem.name = "random";
  problem.p0 = Q(p0);
  problem.q0_base = Q(q0);
  problem.q0_E = Q{Rational(0)};
  const int N = 20;
  for (int n = 1; n <= 5; ++n) {
    const auto trace = atem::iterate_pq(problem, Rational(0), std::max(n, 2), true);
    // retain_final gives p_m, q_m; only test the step it covers
    if (trace.m != n)
      continue;
    const Q& pn = *trace.p_final;
    const Q& qn = *trace.q_final;
    for (const auto& [a, b] : {std::pair{Rational(1), Rational(0)}, std::pair{Rational(0), Rational(1)}}) {
      const Q f(atem::oracle::series_solution(p0, q0, a, b, N));
      Q lhs = f;
      for (int d = 0; d < n + 2; ++d)
        lhs = atem::series_diff(lhs);
      const Q rhs = atem::series_add(atem::series_mul_trunc(pn, atem::series_diff(f), pn.degree()),
                                     atem::series_mul_trunc(qn, f, pn.degree()));
      for (std::size_t j = 0; j <= pn.degree(); ++j)
        EXPECT_EQ(lhs[j], rhs[j]) << "n=" << n << " coefficient " << j;
    }
  }
}

TEST(RegularProperties, ParityZeros) {
  for (const char* g : {"0", "0.1", "2.5"})
    for (const char* E : {"0.3", "1.06528550", "11"}) {
      const auto c = atem::props::parity_zeros(atem::props::anharmonic(g), atem::from_decimal<BigReal>(E), 60);
      EXPECT_TRUE(c.ok) << "g=" << g << " E=" << E << ": " << c.detail;
    }
}

TEST(RegularProperties, DeltaFactorization) {
  const auto problem = atem::props::anharmonic("0.1");
  for (int m = 2; m <= 40; m += 2) {
    const auto c = atem::props::delta_factorization(problem, BigReal("5.7"), m);
    EXPECT_TRUE(c.ok) << c.detail;
  }
}

TEST(RegularProperties, SymbolicPolynomialInE) {
  using atem::oracle::Poly;
  const Poly anh_p0{Rational(0), Rational(2)};
  const Poly anh_q0{Rational(1), Rational(0), Rational(0), Rational(0), Rational(1, 10)};
  const Poly minus_one{Rational(-1)};
  auto c = atem::props::symbolic_delta(anh_p0, anh_q0, minus_one);
  EXPECT_TRUE(c.ok) << c.detail;

  const Poly p0{Rational(1), Rational(-2), Rational(3)};
  const Poly q0{Rational(2), Rational(1), Rational(0), Rational(-1)};
  const Poly qE{Rational(-1), Rational(0), Rational(1, 2)};
  c = atem::props::symbolic_delta(p0, q0, qE);
  EXPECT_TRUE(c.ok) << c.detail;
}

TEST(Regular, BoundaryForEvenAndOddStates) {
  const auto problem = atem::props::anharmonic("0.1");
  // Table I energies of n = 0 (even) and n = 1 (odd)
  const auto even = atem::boundary_from_trace(atem::iterate_pq(problem, BigReal("1.0652855095437"), 78));
  EXPECT_EQ(even.first, 1);
  EXPECT_LT(atem::to_double(BigReal(abs(even.second))), 1e-10);
  const auto odd = atem::boundary_from_trace(atem::iterate_pq(problem, BigReal("3.3068720131529"), 78));
  EXPECT_EQ(odd.second, 1);
  EXPECT_LT(atem::to_double(BigReal(abs(odd.first))), 1e-10);
}

TEST(Regular, BoundaryIsScaleInvariant) {
  const auto problem = atem::props::anharmonic("0.1");
  auto trace = atem::iterate_pq(problem, BigReal("5.74795926"), 40);
  const auto base = atem::boundary_from_trace(trace);
  for (auto& v : trace.p_at_0)
    v *= -BigReal(37) / 3;
  for (auto& v : trace.q_at_0)
    v *= -BigReal(37) / 3;
  const auto scaled = atem::boundary_from_trace(trace);
  EXPECT_LT(atem::to_double(BigReal(abs(base.first - scaled.first))), 1e-40);
  EXPECT_LT(atem::to_double(BigReal(abs(base.second - scaled.second))), 1e-40);
}

TEST(Regular, ContractErrors) {
  const auto problem = atem::props::anharmonic("0.1");
  EXPECT_THROW(atem::iterate_pq(problem, BigReal(1), 1), atem::ContractError);
  EXPECT_THROW(atem::iterate_pq(problem, BigReal(std::numeric_limits<double>::quiet_NaN()), 4), atem::ContractError);
  EXPECT_THROW(atem::regular_quantization(problem, BigReal(1), 3), atem::ContractError);
  auto plain = problem;
  plain.parity = atem::ParityHint::none;
  EXPECT_THROW(atem::delta_parity(atem::iterate_pq(plain, BigReal(1), 4), atem::Parity::even), atem::ContractError);
  auto broken = problem;
  broken.q0_base = atem::TruncSeries<BigReal>{BigReal(1), BigReal(1)};
  EXPECT_THROW(atem::validate(broken), atem::ContractError);
}

TEST(Regular, QuantizationUsesOrderMinusTwo) {
  const auto problem = atem::props::anharmonic("0.1");
  const BigReal E("2.25");
  EXPECT_EQ(atem::regular_quantization(problem, E, 20), atem::delta(atem::iterate_pq(problem, E, 18)));
}

} // namespace
