// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file wavefunction.hpp
/// Eigenfunctions psi = f * envelope from Taylor data at the origin.
///
/// For regular problems the Maclaurin coefficients of f follow from the
/// trace as t_0 = f(0), t_1 = f'(0) and
///
///     t_n = (q_{n-2}(0) f(0) + p_{n-2}(0) f'(0)) / n!,   n >= 2.
///
/// Polynomials are evaluated by Horner in BigReal and only the samples are
/// rounded to double: a degree-80 alternating polynomial is hopeless in
/// double precision beyond |x| ~ 3.

#ifndef ATEM_WAVEFUNCTION_HPP
#define ATEM_WAVEFUNCTION_HPP

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "atem/big_real.hpp"
#include "atem/error.hpp"
#include "atem/frobenius.hpp"
#include "atem/regular.hpp"
#include "atem/series.hpp"

namespace atem {

template <class Real = BigReal>
struct TaylorPolynomial {
  std::vector<Real> coeffs;

  Real operator()(const Real& x) const {
    if (coeffs.empty())
      return Real(0);
    Real acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;)
      acc = acc * x + coeffs[k];
    return acc;
  }

  TaylorPolynomial derivative() const {
    TaylorPolynomial d;
    for (std::size_t k = 1; k < coeffs.size(); ++k)
      d.coeffs.push_back(coeffs[k] * static_cast<long>(k));
    return d;
  }
};

/// Taylor coefficients t_0..t_{m+2} of f for boundary data (f0, f1).
template <class Real>
TaylorPolynomial<Real> taylor_coeffs(const PQTrace<Real>& trace, const Real& f0, const Real& f1) {
  TaylorPolynomial<Real> poly;
  poly.coeffs.reserve(static_cast<std::size_t>(trace.m) + 3);
  poly.coeffs.push_back(f0);
  poly.coeffs.push_back(f1);
  Real factorial(1);
  for (int n = 2; n <= trace.m + 2; ++n) {
    factorial *= n;
    const auto i = static_cast<std::size_t>(n - 2);
    poly.coeffs.push_back((trace.q_at_0[i] * f0 + trace.p_at_0[i] * f1) / factorial);
  }
  return poly;
}

/// Singular route: the coefficient trace already holds the Taylor coefficients.
template <class Real>
TaylorPolynomial<Real> taylor_coeffs(const CoeffTrace<Real>& trace) {
  return TaylorPolynomial<Real>{trace.t};
}

/// Flips the overall sign so that the first coefficient that is not
/// negligible (relative to the largest of t_0, t_1) is positive.
template <class Real>
void canonical_sign(TaylorPolynomial<Real>& poly) {
  using std::abs;
  Real lead(0);
  for (std::size_t i = 0; i < std::min<std::size_t>(2, poly.coeffs.size()); ++i)
    if (abs(poly.coeffs[i]) > lead)
      lead = abs(poly.coeffs[i]);
  const Real cutoff = lead * from_decimal<Real>("1e-20");
  for (const Real& c : poly.coeffs) {
    if (abs(c) > cutoff) {
      if (c < 0)
        for (Real& x : poly.coeffs)
          x = -x;
      return;
    }
  }
}

/// exp(-∫W dx) for a regular problem.
template <class Real>
Real envelope_eval(const RegularProblem<Real>& problem, const Real& x) {
  using std::exp;
  return Real(exp(-series_eval(problem.envelope_integral, x)));
}

/// x^power exp(-gauss x^2) on x >= 0 for a radial problem.
template <class Real>
Real envelope_eval(const SingularProblem<Real>& problem, const Real& x) {
  if (x < 0)
    throw DomainError("envelope_eval: radial envelope needs x >= 0");
  using std::exp;
  using std::pow;
  if (x == 0)
    return problem.envelope.power == 0 ? Real(1) : Real(0);
  return Real(pow(x, problem.envelope.power) * exp(-problem.envelope.gauss * x * x));
}

struct WaveSamples {
  std::vector<double> x;
  std::vector<double> psi;
  bool normalized = false;
  /// ∫ psi^2 of the unscaled samples.
  double norm_estimate = 0;
  /// |∫ psi^2 - 1| after scaling.
  double quadrature_residual = 0;
};

namespace detail {

/// Composite Simpson on a uniform grid with an even number of intervals.
inline double simpson(const std::vector<double>& y, double h) {
  const std::size_t n = y.size() - 1;
  double s = y.front() + y.back();
  for (std::size_t i = 1; i < n; ++i)
    s += (i % 2 ? 4.0 : 2.0) * y[i];
  return s * h / 3.0;
}

inline double norm_squared(const WaveSamples& w) {
  std::vector<double> sq(w.psi.size());
  for (std::size_t i = 0; i < sq.size(); ++i)
    sq[i] = w.psi[i] * w.psi[i];
  return simpson(sq, w.x[1] - w.x[0]);
}

template <class Real, class Problem>
WaveSamples sample(const TaylorPolynomial<Real>& poly, const Problem& problem, double half_width, std::size_t N,
                   bool radial) {
  if (!(half_width > 0))
    throw ContractError("assemble_and_normalize: half-width must be positive");
  if (N < 64 || N % 2 != 0)
    throw ContractError("assemble_and_normalize: N must be even and at least 64");
  WaveSamples w;
  w.x.resize(N + 1);
  w.psi.resize(N + 1);
  const Real L(half_width);
  for (std::size_t i = 0; i <= N; ++i) {
    // symmetric grid: x_{N-i} = -x_i exactly
    const Real x = radial ? Real(L * static_cast<long>(i) / static_cast<long>(N))
                          : Real(L * (2 * static_cast<long>(i) - static_cast<long>(N)) / static_cast<long>(N));
    w.x[i] = to_double(x);
    w.psi[i] = to_double(Real(poly(x) * envelope_eval(problem, x)));
  }
  return w;
}

} // namespace detail

/// Scales samples to unit ∫psi^2 (Simpson), recording the pre-scaling norm.
inline WaveSamples normalize(WaveSamples w) {
  const double norm = detail::norm_squared(w);
  if (!(norm > 1e-300) || !std::isfinite(norm))
    throw NumericError("degenerate state: norm " + std::to_string(norm));
  const double s = 1.0 / std::sqrt(norm);
  for (double& v : w.psi)
    v *= s;
  w.norm_estimate = norm;
  w.normalized = true;
  w.quadrature_residual = std::fabs(detail::norm_squared(w) - 1.0);
  return w;
}

/// psi = f * envelope on [-L, L] (regular) with N intervals, normalized.
template <class Real>
WaveSamples assemble_and_normalize(const TaylorPolynomial<Real>& poly, const RegularProblem<Real>& problem,
                                   double half_width, std::size_t N = 4096) {
  return normalize(detail::sample(poly, problem, half_width, N, false));
}

/// u = f * envelope on [0, L] (radial) with N intervals, normalized.
template <class Real>
WaveSamples assemble_and_normalize(const TaylorPolynomial<Real>& poly, const SingularProblem<Real>& problem,
                                   double half_width, std::size_t N = 4096) {
  return normalize(detail::sample(poly, problem, half_width, N, true));
}

/// Largest r <= half_width such that, on [0, r], the twelve highest-degree
/// Taylor terms (in absolute value) times the envelope stay below
/// rel * max |psi| seen so far.
/// Beyond it the sampled function is the truncation tail, not the state;
/// for a terminating polynomial (e.g. the harmonic states) it is half_width.
template <class Real, class Problem>
double truncation_radius(const TaylorPolynomial<Real>& poly, const Problem& problem, double half_width,
                         double rel = 1e-10, std::size_t steps = 4096) {
  using std::abs;
  std::size_t top = poly.coeffs.size();
  while (top > 0 && poly.coeffs[top - 1] == 0)
    --top;
  // two or more trailing exact zeros: the series terminated
  if (top <= 2 || top + 2 <= poly.coeffs.size())
    return half_width;
  using std::pow;
  const Real rel_r(rel);
  Real peak(0);
  for (std::size_t i = 1; i <= steps; ++i) {
    const Real x = Real(half_width) * static_cast<long>(i) / static_cast<long>(steps);
    const Real env = envelope_eval(problem, x);
    const Real psi = abs(poly(x) * env);
    if (psi > peak)
      peak = psi;
    Real tail(0);
    for (std::size_t j = top > 12 ? top - 12 : 0; j < top; ++j)
      tail += abs(poly.coeffs[j] * pow(x, static_cast<long>(j)));
    if (tail * env > rel_r * peak)
      return half_width * static_cast<double>(i - 1) / static_cast<double>(steps);
  }
  return half_width;
}

/// Sign changes among samples whose magnitude exceeds rel_threshold * max|psi|.
inline int count_nodes(const WaveSamples& w, double rel_threshold = 1e-6) {
  double peak = 0;
  for (double v : w.psi)
    peak = std::max(peak, std::fabs(v));
  int nodes = 0;
  int last = 0;
  for (double v : w.psi) {
    if (std::fabs(v) <= rel_threshold * peak)
      continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last)
      ++nodes;
    last = s;
  }
  return nodes;
}

/// Residual f'' - p0 f' - q0(E) f of the polynomial at x, and the largest
/// magnitude among the three terms (for relative comparisons).
template <class Real>
std::pair<Real, Real> ode_residual(const TaylorPolynomial<Real>& poly, const RegularProblem<Real>& problem,
                                   const Real& E, const Real& x) {
  using std::abs;
  const auto d1 = poly.derivative();
  const auto d2 = d1.derivative();
  const Real a = d2(x);
  const Real b = series_eval(problem.p0, x) * d1(x);
  const Real c = series_eval(problem.q0(E), x) * poly(x);
  Real scale = abs(a);
  if (abs(b) > scale)
    scale = abs(b);
  if (abs(c) > scale)
    scale = abs(c);
  return {a - b - c, scale};
}

/// Writes `x,psi` CSV (LF, 17 significant digits) to a stream.
inline void write_csv(const WaveSamples& samples, std::ostream& out) {
  out << "x,psi\n";
  char buf[64];
  for (std::size_t i = 0; i < samples.x.size(); ++i) {
    if (!std::isfinite(samples.x[i]) || !std::isfinite(samples.psi[i]))
      throw NumericError("write_csv: non-finite sample at index " + std::to_string(i));
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", samples.x[i], samples.psi[i]);
    out << buf;
  }
}

/// Writes text to `path` through a sibling temporary file and an atomic
/// rename, so no partial file is left behind on failure.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

inline void export_csv(const WaveSamples& samples, const std::filesystem::path& destination) {
  std::ostringstream body;
  write_csv(samples, body);
  write_file_atomic(destination, body.str());
}

} // namespace atem

#endif // ATEM_WAVEFUNCTION_HPP
