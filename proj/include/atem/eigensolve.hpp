// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file eigensolve.hpp
/// Eigenvalues as sign changes of a quantization functional delta(E).
///
/// delta spans hundreds of orders of magnitude across an energy window, so
/// only its sign is used for bracketing and bisection; log10 |delta| serves
/// for diagnostics and for the near-degenerate dip heuristic. Roots that do
/// not persist when the Taylor order k grows are reported as spurious.

#ifndef ATEM_EIGENSOLVE_HPP
#define ATEM_EIGENSOLVE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "atem/big_real.hpp"
#include "atem/error.hpp"

namespace atem {

/// delta(E) at a fixed order.
template <class Real = BigReal>
using EnergyFunctional = std::function<Real(const Real&)>;

/// delta(E, k) for any Taylor order k.
template <class Real = BigReal>
using QuantizationFunctional = std::function<Real(const Real&, int)>;

struct EnergyWindow {
  double e_min = 0;
  double e_max = 1;
  double grid_step = 0.05;

  void validate() const {
    if (!(std::isfinite(e_min) && std::isfinite(e_max) && e_min < e_max))
      throw ContractError("energy window needs finite e_min < e_max");
    if (!(grid_step > 0))
      throw ContractError("energy window grid_step must be positive");
    if ((e_max - e_min) / grid_step > 1e6)
      throw ContractError("energy window holds more than 1e6 grid steps");
  }

  /// Number of grid intervals; the last grid point is clamped to e_max.
  std::size_t intervals() const {
    return static_cast<std::size_t>(std::ceil((e_max - e_min) / grid_step - 1e-9));
  }

  double point(std::size_t i) const {
    return i >= intervals() ? e_max : e_min + static_cast<double>(i) * grid_step;
  }
};

template <class Real = BigReal>
struct Bracket {
  Real lo;
  Real hi;
  /// Set when a grid point evaluated to an exact zero.
  std::optional<Real> exact;
};

template <class Real = BigReal>
struct EigenResult {
  Real E{0};
  int k_used = 0;
  /// log10 |delta(E)| relative to the larger endpoint value of the original bracket.
  double residual = 0;
  /// |E(k) - E(k_prev)| for the nearest root at the previous order; +inf if none.
  double stability = std::numeric_limits<double>::infinity();
  int state_index = -1;
};

template <class Real = BigReal>
struct Spectrum {
  std::vector<EigenResult<Real>> accepted;
  std::vector<EigenResult<Real>> spurious;
};

struct SolveTolerances {
  double tol_E = 1e-12;
  double tol_stab = 1e-5;
};

namespace detail {

template <class Real>
Real evaluate(const EnergyFunctional<Real>& fn, const Real& E) {
  try {
    Real v = fn(E);
    if (!is_finite(v))
      throw NumericError("quantization functional is not finite");
    return v;
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << e.what() << " (at E = " << to_double(E) << ")";
    throw NumericError(msg.str());
  }
}

} // namespace detail

/// Grid intervals over `window` across which sign(delta) changes.
///
/// An exact zero at a grid point yields a bracket over both neighbours that
/// carries the point as `exact`. A grid point where log10 |delta| dips more
/// than 10 orders below both neighbours without a sign change triggers one
/// level of interval halving, catching root pairs closer than grid_step.
template <class Real>
std::vector<Bracket<Real>> scan_brackets(const EnergyFunctional<Real>& fn, const EnergyWindow& window) {
  window.validate();
  const std::size_t n = window.intervals();
  std::vector<Real> xs(n + 1);
  std::vector<int> signs(n + 1);
  std::vector<double> logs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = Real(window.point(i));
    const Real v = detail::evaluate(fn, xs[i]);
    signs[i] = sign_of(v);
    logs[i] = log10_abs(v);
  }

  std::vector<Bracket<Real>> out;
  for (std::size_t i = 0; i <= n; ++i) {
    if (signs[i] == 0) {
      out.push_back({xs[i == 0 ? 0 : i - 1], xs[i == n ? n : i + 1], xs[i]});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (signs[i] * signs[i + 1] < 0)
      out.push_back({xs[i], xs[i + 1], std::nullopt});
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (signs[i] == 0 || signs[i - 1] != signs[i] || signs[i + 1] != signs[i])
      continue;
    if (!(logs[i] < std::min(logs[i - 1], logs[i + 1]) - 10.0))
      continue;
    const Real left_mid = (xs[i - 1] + xs[i]) / 2;
    const Real right_mid = (xs[i] + xs[i + 1]) / 2;
    const Real sub[5] = {xs[i - 1], left_mid, xs[i], right_mid, xs[i + 1]};
    int sub_signs[5] = {signs[i - 1], sign_of(detail::evaluate(fn, left_mid)), signs[i],
                        sign_of(detail::evaluate(fn, right_mid)), signs[i + 1]};
    for (int s = 0; s < 4; ++s) {
      if (sub_signs[s] * sub_signs[s + 1] < 0)
        out.push_back({sub[s], sub[s + 1], std::nullopt});
      else if (sub_signs[s + 1] == 0 && s + 1 != 2)
        out.push_back({sub[s], sub[s + 2], sub[s + 1]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Bracket<Real>& a, const Bracket<Real>& b) { return a.lo < b.lo; });
  return out;
}

/// Bisection on sign(delta) until the bracket is no wider than tol_E.
///
/// If the endpoints do not straddle a sign change the bracket is widened once
/// by `widen_step` on each side; a second failure is a NumericError.
template <class Real>
Real refine_root(const EnergyFunctional<Real>& fn, const Bracket<Real>& bracket, double tol_E = 1e-12,
                 double widen_step = 0.05) {
  if (bracket.exact && detail::evaluate(fn, *bracket.exact) == 0)
    return *bracket.exact;
  if (!(tol_E > 0))
    throw ContractError("refine_root: tol_E must be positive");

  Real lo = bracket.lo;
  Real hi = bracket.hi;
  int s_lo = sign_of(detail::evaluate(fn, lo));
  int s_hi = sign_of(detail::evaluate(fn, hi));
  if (s_lo == 0)
    return lo;
  if (s_hi == 0)
    return hi;
  if (s_lo * s_hi > 0) {
    lo -= widen_step;
    hi += widen_step;
    s_lo = sign_of(detail::evaluate(fn, lo));
    s_hi = sign_of(detail::evaluate(fn, hi));
    if (s_lo == 0)
      return lo;
    if (s_hi == 0)
      return hi;
    if (s_lo * s_hi > 0) {
      std::ostringstream msg;
      msg << "refine_root: no sign change in [" << to_double(lo) << ", " << to_double(hi) << "] after widening";
      throw NumericError(msg.str());
    }
  }
  const Real tol(tol_E);
  while (hi - lo > tol) {
    const Real mid = (lo + hi) / 2;
    const int s_mid = sign_of(detail::evaluate(fn, mid));
    if (s_mid == 0)
      return mid;
    if (s_mid == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

/// All refined roots of delta(., k) in the window, ascending.
template <class Real>
std::vector<EigenResult<Real>> roots_at_order(const QuantizationFunctional<Real>& fn, const EnergyWindow& window,
                                              int order, double tol_E = 1e-12) {
  const EnergyFunctional<Real> at_k = [&](const Real& E) { return fn(E, order); };
  std::vector<EigenResult<Real>> out;
  for (const auto& bracket : scan_brackets(at_k, window)) {
    EigenResult<Real> r;
    r.E = refine_root(at_k, bracket, tol_E, window.grid_step);
    r.k_used = order;
    const Real at_root = at_k(r.E);
    using std::abs;
    const Real lo_val = abs(at_k(bracket.lo));
    const Real hi_val = abs(at_k(bracket.hi));
    const double scale = std::max(log10_abs(Real(lo_val)), log10_abs(Real(hi_val)));
    r.residual = std::isfinite(scale) ? log10_abs(at_root) - scale : log10_abs(at_root);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.E < b.E; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.E == b.E; }), out.end());
  return out;
}

namespace detail {

template <class Real>
double nearest_distance(const Real& E, const std::vector<EigenResult<Real>>& roots) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : roots) {
    using std::abs;
    best = std::min(best, to_double(Real(abs(r.E - E))));
  }
  return best;
}

inline void require_k_list(const std::vector<int>& k_list, std::size_t min_size) {
  if (k_list.size() < min_size)
    throw ContractError("need at least " + std::to_string(min_size) + " iteration counts");
  for (std::size_t i = 1; i < k_list.size(); ++i)
    if (k_list[i] <= k_list[i - 1])
      throw ContractError("iteration counts must be strictly ascending");
}

} // namespace detail

/// Roots at the largest order in k_list, accepted when a root of the
/// previous order lies within tol_stab. Unmatched roots are returned as
/// spurious; state indices count accepted roots only.
template <class Real>
Spectrum<Real> stable_spectrum(const QuantizationFunctional<Real>& fn, const EnergyWindow& window,
                               const std::vector<int>& k_list, const SolveTolerances& tol = {}) {
  detail::require_k_list(k_list, 2);
  const int k_max = k_list.back();
  const int k_prev = k_list[k_list.size() - 2];
  const auto top = roots_at_order(fn, window, k_max, tol.tol_E);
  const auto prev = roots_at_order(fn, window, k_prev, tol.tol_E);

  Spectrum<Real> spectrum;
  for (auto r : top) {
    r.stability = detail::nearest_distance(r.E, prev);
    if (r.stability <= tol.tol_stab) {
      r.state_index = static_cast<int>(spectrum.accepted.size());
      spectrum.accepted.push_back(r);
    } else {
      spectrum.spurious.push_back(r);
    }
  }
  return spectrum;
}

template <class Real = BigReal>
struct ConvergenceTable {
  std::vector<int> orders;
  /// cells[row][state]: refined root at orders[row] matched to the state.
  std::vector<std::vector<std::optional<Real>>> cells;
  /// Whether the cell has a partner within tol_stab in the next row (the
  /// last row looks at the previous one).
  std::vector<std::vector<bool>> stable;
  /// Roots of each row not matched to any state.
  std::vector<std::vector<Real>> unmatched;
  std::vector<std::string> notes;

  std::size_t states() const { return cells.empty() ? 0 : cells.front().size(); }
};

/// Refined roots for every order in k_list, aligned to the states found at
/// the largest order by nearest-energy matching (states in ascending order,
/// ties resolved toward the lower root and noted).
template <class Real>
ConvergenceTable<Real> convergence_table(const QuantizationFunctional<Real>& fn, const EnergyWindow& window,
                                         const std::vector<int>& k_list, const SolveTolerances& tol = {}) {
  detail::require_k_list(k_list, 1);
  ConvergenceTable<Real> table;
  table.orders = k_list;
  std::vector<std::vector<EigenResult<Real>>> rows;
  for (int k : k_list)
    rows.push_back(roots_at_order(fn, window, k, tol.tol_E));

  const auto& reference = rows.back();
  const std::size_t states = reference.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::optional<Real>> cells(states);
    std::vector<bool> used(rows[r].size(), false);
    for (std::size_t s = 0; s < states; ++s) {
      std::optional<std::size_t> best;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows[r].size(); ++i) {
        if (used[i])
          continue;
        using std::abs;
        const double d = to_double(Real(abs(rows[r][i].E - reference[s].E)));
        if (d < best_d) {
          best_d = d;
          best = i;
        } else if (d == best_d && best) {
          table.notes.push_back("tie at k = " + std::to_string(k_list[r]) + ", state " + std::to_string(s) +
                                ": kept the lower root");
        }
      }
      if (best) {
        used[*best] = true;
        cells[s] = rows[r][*best].E;
      }
    }
    std::vector<Real> extra;
    for (std::size_t i = 0; i < rows[r].size(); ++i)
      if (!used[i])
        extra.push_back(rows[r][i].E);
    table.cells.push_back(std::move(cells));
    table.unmatched.push_back(std::move(extra));
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<bool> flags(states, rows.size() == 1);
    if (rows.size() > 1) {
      const std::size_t other = r + 1 < rows.size() ? r + 1 : r - 1;
      for (std::size_t s = 0; s < states; ++s) {
        const auto& a = table.cells[r][s];
        const auto& b = table.cells[other][s];
        if (a && b) {
          using std::abs;
          flags[s] = to_double(Real(abs(*a - *b))) <= tol.tol_stab;
        }
      }
    }
    table.stable.push_back(std::move(flags));
  }
  return table;
}

} // namespace atem

#endif // ATEM_EIGENSOLVE_HPP
