// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atem/atem.hpp"

namespace atem::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct NotFound : Error {
  using Error::Error;
};

/// Flags shared by every subcommand; empty strings mean "not given".
struct Options {
  std::string problem;
  std::string spec;
  std::string g, omega, lambda, ell;
  int k = 0;
  std::string k_list;
  std::string window;
  double step = 0;
  unsigned precision = kDefaultPrecisionBits;
  double tol_e = 1e-12;
  double tol_stab = 0;
  double tol_oracle = 1e-5;
  bool csv = false;
  int state = 0;
  std::string out;
  int j = 1;
  double half_width = 0;
  int points = 4096;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

/// General format with `digits` significant digits, rounded from full precision.
std::string general(const BigReal& x, int digits) {
  if (x == 0)
    return "0";
  return x.str(digits, std::ios_base::fmtflags(0));
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw UsageError("--k-list: '" + s + "' is not an integer");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');)
      parts.push_back(p);
    if (parts.size() != 3)
      throw UsageError("--k-list range must be first:last:step");
    const int a = to_int(parts[0]), b = to_int(parts[1]), s = to_int(parts[2]);
    if (s <= 0 || b < a)
      throw UsageError("--k-list range needs first <= last and step > 0");
    for (int k = a; k <= b; k += s)
      ks.push_back(k);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');)
      ks.push_back(to_int(p));
  }
  return ks;
}

EnergyWindow parse_window(const std::string& text, EnergyWindow base) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw UsageError("--window must be min:max");
  try {
    base.e_min = std::stod(text.substr(0, colon));
    base.e_max = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--window must be min:max, got '" + text + "'");
  }
  return base;
}

/// A resolved invocation: problem, window, orders, tolerances.
struct RunConfig {
  ProblemDefinition def;
  std::string label;
  EnergyWindow window;
  std::vector<int> k_list;
  SolveTolerances tol;
  double half_width = 0;
};

RunConfig resolve(const Options& o, const std::vector<int>& fallback_k_list) {
  RunConfig cfg;
  if (o.problem.empty() == o.spec.empty())
    throw UsageError("give exactly one of --problem or --spec");
  if (!o.spec.empty()) {
    if (!std::filesystem::exists(o.spec))
      throw UsageError("problem spec not found: " + o.spec);
    cfg.def = load_spec(o.spec);
    cfg.label = cfg.def.name() + " (" + o.spec + ")";
  } else {
    std::map<std::string, std::string> params;
    if (!o.g.empty())
      params["g"] = o.g;
    if (!o.omega.empty())
      params["omega"] = o.omega;
    if (!o.lambda.empty())
      params["lambda"] = o.lambda;
    if (!o.ell.empty())
      params["l"] = o.ell;
    cfg.def = builtin(o.problem, params);
    cfg.label = cfg.def.name();
    std::string sep = " (";
    for (const auto& [key, value] : cfg.def.parameters) {
      cfg.label += sep + key + "=" + value;
      sep = ", ";
    }
    if (!cfg.def.parameters.empty())
      cfg.label += ")";
  }

  const ProblemDefaults& d = cfg.def.defaults;
  cfg.window = o.window.empty() ? d.window : parse_window(o.window, d.window);
  if (o.step > 0)
    cfg.window.grid_step = o.step;
  cfg.window.validate();

  if (!o.k_list.empty()) {
    cfg.k_list = parse_k_list(o.k_list);
  } else if (o.k > 0) {
    cfg.k_list = {o.k - 10, o.k};
  } else {
    cfg.k_list = fallback_k_list.empty() ? d.k_list : fallback_k_list;
  }
  const int min_order = cfg.def.is_regular() ? 4 : 3;
  for (int k : cfg.k_list)
    if (k < min_order)
      throw UsageError("iteration count " + std::to_string(k) + " is below the minimum " +
                       std::to_string(min_order));
  for (std::size_t i = 1; i < cfg.k_list.size(); ++i)
    if (cfg.k_list[i] <= cfg.k_list[i - 1])
      throw UsageError("iteration counts must be strictly ascending");

  cfg.tol.tol_E = o.tol_e;
  cfg.tol.tol_stab = o.tol_stab > 0 ? o.tol_stab : d.tol_stab;
  if (!(cfg.tol.tol_E > 0))
    throw UsageError("--tol-e must be positive");
  cfg.half_width = o.half_width > 0 ? o.half_width : d.half_width;
  return cfg;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void header(std::ostream& out, const std::string& command, const RunConfig& cfg, const Options& o) {
  out << "# atem " << command << "\n";
  out << "# problem: " << cfg.label << "\n";
  out << "# window: " << fmt("%g", cfg.window.e_min) << ":" << fmt("%g", cfg.window.e_max) << " step "
      << fmt("%g", cfg.window.grid_step) << "\n";
  out << "# k_list: " << join_ints(cfg.k_list) << "\n";
  out << "# precision: " << o.precision << " bits\n";
  out << "# tol_E: " << fmt("%g", cfg.tol.tol_E) << "\n";
  out << "# tol_stab: " << fmt("%g", cfg.tol.tol_stab) << "\n";
}

std::string residual_text(double log10_residual) {
  if (!std::isfinite(log10_residual))
    return "0";
  return "1e" + fmt("%.0f", std::floor(log10_residual));
}

Spectrum<BigReal> solve_spectrum(const RunConfig& cfg) {
  if (cfg.k_list.size() < 2)
    throw UsageError("need >=2 iteration counts");
  return stable_spectrum(quantization_functional(cfg.def.problem), cfg.window, cfg.k_list, cfg.tol);
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, {});
  header(out, "solve", cfg, o);
  const auto spectrum = solve_spectrum(cfg);
  if (o.csv) {
    out << "index,E,residual,stability,accepted\n";
    for (const auto& r : spectrum.accepted)
      out << r.state_index << "," << to_fixed(r.E, 12) << "," << residual_text(r.residual) << ","
          << fmt("%.3e", r.stability) << ",1\n";
    for (const auto& r : spectrum.spurious)
      out << "," << to_fixed(r.E, 12) << "," << residual_text(r.residual) << "," << fmt("%.3e", r.stability)
          << ",0\n";
  } else {
    out << "# n E residual stability\n";
    for (const auto& r : spectrum.accepted)
      out << r.state_index << " " << to_fixed(r.E, 8) << " " << residual_text(r.residual) << " "
          << fmt("%.1e", r.stability) << "\n";
    if (!spectrum.spurious.empty()) {
      out << "# spurious (no partner at k=" << cfg.k_list[cfg.k_list.size() - 2] << ")\n";
      for (const auto& r : spectrum.spurious)
        out << "- " << to_fixed(r.E, 8) << " " << residual_text(r.residual) << " " << fmt("%.1e", r.stability)
            << "\n";
    }
  }
  if (spectrum.accepted.empty()) {
    err << "atem: no stable eigenvalue in the window\n";
    return kNotFound;
  }
  return kOk;
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, {20, 30, 40, 50, 60, 70, 80});
  if (cfg.k_list.size() < 2)
    throw UsageError("need >=2 iteration counts");
  const auto table = convergence_table(quantization_functional(cfg.def.problem), cfg.window, cfg.k_list, cfg.tol);
  std::ostringstream body;
  if (o.csv) {
    body << "k";
    for (std::size_t s = 0; s < table.states(); ++s)
      body << ",E" << s;
    body << "\n";
    for (std::size_t r = 0; r < table.orders.size(); ++r) {
      body << table.orders[r];
      for (std::size_t s = 0; s < table.states(); ++s)
        body << "," << (table.cells[r][s] ? to_fixed(*table.cells[r][s], 12) : std::string());
      body << "\n";
    }
  } else {
    header(body, "converge", cfg, o);
    body << "# '?' marks a cell that moves by more than tol_stab to the neighbouring row\n";
    std::vector<std::vector<std::string>> rows(1, std::vector<std::string>{"k"});
    for (std::size_t s = 0; s < table.states(); ++s)
      rows[0].push_back("n=" + std::to_string(s));
    for (std::size_t r = 0; r < table.orders.size(); ++r) {
      rows.push_back({std::to_string(table.orders[r])});
      for (std::size_t s = 0; s < table.states(); ++s) {
        std::string cell = "-";
        if (table.cells[r][s])
          cell = to_fixed(*table.cells[r][s], 8) + (table.stable[r][s] ? "" : "?");
        rows.back().push_back(cell);
      }
    }
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::size_t width = c == 0 ? 5 : 14;
        line += row[c];
        if (c + 1 < row.size())
          line += std::string(width > row[c].size() ? width - row[c].size() : 1, ' ');
      }
      body << line << "\n";
    }
    for (std::size_t r = 0; r < table.orders.size(); ++r) {
      if (table.unmatched[r].empty())
        continue;
      body << "# k=" << table.orders[r] << " unmatched:";
      for (const auto& e : table.unmatched[r])
        body << " " << to_fixed(e, 8);
      body << "\n";
    }
    for (const auto& note : table.notes)
      body << "# note: " << note << "\n";
  }
  if (!o.out.empty())
    write_file_atomic(o.out, body.str());
  else
    out << body.str();
  if (table.states() == 0) {
    err << "atem: no roots in the window at k=" << cfg.k_list.back() << "\n";
    return kNotFound;
  }
  return kOk;
}

/// The requested half-width, or the polynomial's truncation radius when the
/// width was not given explicitly.
template <class Problem>
double sampling_half_width(const TaylorPolynomial<BigReal>& poly, const Problem& problem, double limit, bool given) {
  if (given)
    return limit;
  return truncation_radius(poly, problem, limit);
}

int cmd_wavefunction(const Options& o, std::ostream& out, std::ostream&) {
  if (o.out.empty())
    throw UsageError("wavefunction needs --out FILE for the CSV samples");
  if (o.state < 0)
    throw UsageError("--state must be non-negative");
  const RunConfig cfg = resolve(o, {});
  header(out, "wavefunction", cfg, o);
  const auto spectrum = solve_spectrum(cfg);
  if (static_cast<std::size_t>(o.state) >= spectrum.accepted.size())
    throw NotFound("state " + std::to_string(o.state) + " not found (" + std::to_string(spectrum.accepted.size()) +
                   " stable states in the window)");
  const BigReal E = spectrum.accepted[static_cast<std::size_t>(o.state)].E;
  const int k = cfg.k_list.back();

  TaylorPolynomial<BigReal> poly;
  WaveSamples samples;
  double half_width = cfg.half_width;
  if (const auto* p = std::get_if<RegularProblem<BigReal>>(&cfg.def.problem)) {
    const auto trace = iterate_pq(*p, E, k - 2);
    const auto [f0, f1] = boundary_from_trace(trace);
    poly = taylor_coeffs(trace, f0, f1);
    half_width = sampling_half_width(poly, *p, cfg.half_width, o.half_width > 0);
    samples = assemble_and_normalize(poly, *p, half_width, static_cast<std::size_t>(o.points));
  } else {
    const auto& sp = std::get<SingularProblem<BigReal>>(cfg.def.problem);
    auto trace = leibniz_recurrence(sp, E, k);
    CoeffTrace<BigReal> shorter = trace;
    shorter.m = k - 1;
    shorter.t.pop_back();
    using std::abs;
    // The energy terminates the series at degree k-1 or k-2; keep the
    // polynomial whose next coefficient vanishes.
    if (abs(delta_singular(trace)) <= abs(delta_singular(shorter))) {
      trace.t.pop_back();
    } else {
      trace.t.resize(trace.t.size() - 2);
    }
    poly = taylor_coeffs(trace);
    half_width = sampling_half_width(poly, sp, cfg.half_width, o.half_width > 0);
    samples = assemble_and_normalize(poly, sp, half_width, static_cast<std::size_t>(o.points));
  }
  out << "# half-width: " << fmt("%.4g", half_width) << (o.half_width > 0 ? " (given)" : " (truncation radius)")
      << "  points: " << o.points << "\n";
  out << "state " << o.state << " E " << to_fixed(E, 8) << "\n";
  out << "coefficients:";
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i)
    out << (i ? ", " : " ") << general(poly.coeffs[i], 6);
  out << "\n";
  out << "nodes " << count_nodes(samples) << "\n";
  out << "norm " << fmt("%.6e", samples.norm_estimate) << " quadrature residual "
      << fmt("%.1e", samples.quadrature_residual) << "\n";
  export_csv(samples, o.out);
  out << "wrote " << samples.x.size() << " samples to " << o.out << "\n";
  return kOk;
}

int cmd_quasi_exact(const Options& o, std::ostream& out, std::ostream&) {
  if (o.j < 1 || o.j > 3)
    throw UsageError("unsupported quasi-exact level j=" + std::to_string(o.j) + " (supported: 1, 2, 3)");
  if (o.ell.empty() || o.omega.empty())
    throw UsageError("quasi-exact needs --l and --omega");
  const Rational ell = rational_from_decimal(o.ell);
  const Rational omega = rational_from_decimal(o.omega);
  const auto report = verify_quasi_exact(ell, omega, o.j);
  out << "# atem quasi-exact\n";
  out << "# l: " << o.ell << "  omega: " << o.omega << "  j: " << o.j << "  depth: " << report.m << "\n";
  out << "# precision: " << o.precision << " bits\n";
  out << "E = " << to_fixed(BigReal(report.E), 8) << "\n";
  for (const auto& e : report.entries) {
    out << "lambda = " << to_fixed(e.lambda, 8) << "  " << (e.terminates ? "PASS" : "FAIL");
    if (std::isfinite(e.tail_log10))
      out << "  max tail |t_n| 1e" << fmt("%.0f", std::floor(e.tail_log10));
    else
      out << "  max tail |t_n| 0";
    out << "\n";
  }
  if (o.j == 1)
    out << "linear coefficient " << (report.linear_coefficient_matches ? "PASS" : "FAIL") << "\n";
  out << "verdict " << (report.all_pass() ? "PASS" : "FAIL") << "\n";
  return report.all_pass() ? kOk : kNumeric;
}

std::vector<double> to_doubles(const TruncSeries<BigReal>& s) {
  std::vector<double> v;
  for (const auto& c : s.coeffs())
    v.push_back(to_double(c));
  return v;
}

/// V = q0_base - W' + W^2, valid when p0 = 2W and q0_E = -1.
std::vector<double> reconstruct_potential(const RegularProblem<BigReal>& p) {
  if (!(series_sub(p.p0, series_scale(p.envelope_W, BigReal(2))).is_zero()))
    throw UsageError("oracle needs p0 = 2W to reconstruct the potential");
  if (p.q0_E.effective_degree() != 0 || p.q0_E[0] != -1)
    throw UsageError("oracle needs q0_E = -1 to reconstruct the potential");
  const std::vector<double> q = to_doubles(p.q0_base);
  const std::vector<double> w = to_doubles(p.envelope_W);
  std::vector<double> v(std::max(q.size(), 2 * w.size()), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i)
    v[i] += q[i];
  for (std::size_t i = 1; i < w.size(); ++i)
    v[i - 1] -= static_cast<double>(i) * w[i];
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      v[i + j] += w[i] * w[j];
  return v;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, {});
  const auto* p = std::get_if<RegularProblem<BigReal>>(&cfg.def.problem);
  if (!p)
    throw UsageError("oracle supports regular problems only");
  const std::vector<double> v = reconstruct_potential(*p);
  const auto V = [v](double x) {
    double acc = 0;
    for (std::size_t i = v.size(); i-- > 0;)
      acc = acc * x + v[i];
    return acc;
  };
  header(out, "oracle", cfg, o);
  out << "# shooting interval: " << fmt("%g", -cfg.half_width) << ":" << fmt("%g", cfg.half_width)
      << "  step 1e-3  tol " << fmt("%g", o.tol_oracle) << "\n";
  const auto spectrum = solve_spectrum(cfg);
  if (spectrum.accepted.empty()) {
    err << "atem: no stable eigenvalue in the window\n";
    return kNotFound;
  }
  out << "# n E_atem E_oracle delta status\n";
  std::size_t verified = 0;
  for (const auto& r : spectrum.accepted) {
    const double e = to_double(r.E);
    out << r.state_index << " " << to_fixed(r.E, 8) << " ";
    try {
      const double eo = shooting_oracle(V, e, -cfg.half_width, cfg.half_width);
      const double d = eo - e;
      const bool ok = std::fabs(d) <= o.tol_oracle;
      verified += ok ? 1 : 0;
      out << fmt("%.8f", eo) << " " << fmt("%.1e", d) << " " << (ok ? "ok" : "MISMATCH") << "\n";
    } catch (const NumericError& e) {
      out << "- - FAILED (" << e.what() << ")\n";
    }
  }
  out << "verified " << verified << " of " << spectrum.accepted.size() << "\n";
  return 2 * verified >= spectrum.accepted.size() ? kOk : kNumeric;
}

void add_problem_flags(CLI::App* sub, Options& o) {
  sub->add_option("--precision", o.precision, "working precision in bits")->capture_default_str();
  sub->add_option("--problem", o.problem, "builtin problem: harmonic, anharmonic, quantum_dot");
  sub->add_option("--spec", o.spec, "JSON problem spec (schema v1)");
  sub->add_option("--g", o.g, "anharmonic coupling g");
  sub->add_option("--omega", o.omega, "quantum_dot confinement omega");
  sub->add_option("--lambda", o.lambda, "quantum_dot coupling lambda");
  sub->add_option("--l", o.ell, "quantum_dot angular momentum l");
  sub->add_option("--k", o.k, "Taylor order k (stability is judged against k-10)");
  sub->add_option("--k-list", o.k_list, "orders as a,b,c or first:last:step");
  sub->add_option("--window", o.window, "energy window min:max");
  sub->add_option("--step", o.step, "energy grid step");
  sub->add_option("--tol-e", o.tol_e, "bisection tolerance in E");
  sub->add_option("--tol-stab", o.tol_stab, "stability tolerance across k");
  sub->add_flag("--csv", o.csv, "machine-readable CSV output");
  sub->add_option("--out", o.out, "output file");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"ATEM eigenvalue solver", "atem"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "stable eigenvalues in a window");
  add_problem_flags(solve, o);
  auto* converge = app.add_subcommand("converge", "eigenvalues across several Taylor orders");
  add_problem_flags(converge, o);
  auto* wave = app.add_subcommand("wavefunction", "Taylor polynomial and sampled eigenfunction of one state");
  add_problem_flags(wave, o);
  wave->add_option("--state", o.state, "state index (0-based, accepted states only)");
  wave->add_option("--half-width", o.half_width, "sampling half-width L");
  wave->add_option("--points", o.points, "number of grid intervals (even)");
  auto* qe = app.add_subcommand("quasi-exact", "verify closed-form quantum-dot solutions");
  qe->add_option("--l", o.ell, "angular momentum l")->required();
  qe->add_option("--omega", o.omega, "confinement omega")->required();
  qe->add_option("--j", o.j, "level j (1, 2 or 3)");
  qe->add_option("--precision", o.precision, "working precision in bits")->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "compare against RK4 shooting");
  add_problem_flags(oracle, o);
  oracle->add_option("--half-width", o.half_width, "shooting interval half-width");
  oracle->add_option("--tol-oracle", o.tol_oracle, "agreement tolerance");

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "atem: " << e.what() << "\n";
    return kUsage;
  }

  try {
    PrecisionScope precision(o.precision);
    if (solve->parsed())
      return cmd_solve(o, out, err);
    if (converge->parsed())
      return cmd_converge(o, out, err);
    if (wave->parsed())
      return cmd_wavefunction(o, out, err);
    if (qe->parsed())
      return cmd_quasi_exact(o, out, err);
    return cmd_oracle(o, out, err);
  } catch (const NotFound& e) {
    err << "atem: " << e.what() << "\n";
    return kNotFound;
  } catch (const UsageError& e) {
    err << "atem: " << e.what() << "\n";
    return kUsage;
  } catch (const SpecError& e) {
    err << "atem: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    err << "atem: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "atem: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "atem: " << e.what() << "\n";
    return kNumeric;
  }
}

} // namespace atem::cli
