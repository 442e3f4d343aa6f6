// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file problems.hpp
/// Built-in problem catalog and the JSON problem-spec format (schema v1).
///
/// A spec file lists polynomial coefficients in ascending powers as decimal
/// strings. An entry may also name a parameter from the "parameters" object
/// (optionally with a leading '-'); substitution happens at load time.
///
///     {
///       "schema_version": 1,
///       "kind": "regular",
///       "name": "anharmonic",
///       "parameters": {"g": "0.1"},
///       "p0": ["0", "2"],
///       "q0_base": ["1", "0", "0", "0", "g"],
///       "q0_E": ["-1"],
///       "envelope": {"W": ["0", "1"], "W_integral": ["0", "0", "0.5"]},
///       "parity": "even-potential",
///       "defaults": {"window": ["0", "16", "0.05"], "k_list": [70, 80], "tol_stab": "1e-5", "half_width": "12"}
///     }
///
/// Singular problems use "A", "B", "C_base", "C_E", an envelope
/// {"power", "gauss"} and an optional "offset" {"ell", "hbar_omega",
/// "omega_c", "L_r"}.

#ifndef ATEM_PROBLEMS_HPP
#define ATEM_PROBLEMS_HPP

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "atem/big_real.hpp"
#include "atem/eigensolve.hpp"
#include "atem/error.hpp"
#include "atem/frobenius.hpp"
#include "atem/regular.hpp"
#include "atem/series.hpp"

namespace atem {

using Problem = std::variant<RegularProblem<BigReal>, SingularProblem<BigReal>>;

/// Run defaults carried with a problem.
struct ProblemDefaults {
  EnergyWindow window{0, 16, 0.05};
  std::vector<int> k_list{70, 80};
  double tol_stab = 1e-5;
  /// Sampling half-width for wavefunctions (the radial grid is [0, L]).
  double half_width = 12;

  friend bool operator==(const ProblemDefaults& a, const ProblemDefaults& b) {
    return a.window.e_min == b.window.e_min && a.window.e_max == b.window.e_max &&
           a.window.grid_step == b.window.grid_step && a.k_list == b.k_list && a.tol_stab == b.tol_stab &&
           a.half_width == b.half_width;
  }
};

struct ProblemDefinition {
  Problem problem;
  ProblemDefaults defaults;
  /// Named scalars as given (decimal text), for reporting.
  std::map<std::string, std::string> parameters;

  const std::string& name() const {
    return std::visit([](const auto& p) -> const std::string& { return p.name; }, problem);
  }
  bool is_regular() const { return std::holds_alternative<RegularProblem<BigReal>>(problem); }
};

inline bool operator==(const ProblemDefinition& a, const ProblemDefinition& b) {
  return a.problem == b.problem && a.defaults == b.defaults;
}

/// delta(E, k) for either problem kind.
inline QuantizationFunctional<BigReal> quantization_functional(const Problem& problem) {
  return std::visit(
      [](const auto& p) -> QuantizationFunctional<BigReal> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RegularProblem<BigReal>>)
          return [p](const BigReal& E, int k) { return regular_quantization(p, E, k); };
        else
          return [p](const BigReal& E, int k) { return singular_quantization(p, E, k); };
      },
      problem);
}

namespace detail {

inline const std::string& require_param(const std::map<std::string, std::string>& params, const std::string& key,
                                        const std::string& problem) {
  auto it = params.find(key);
  if (it == params.end())
    throw SpecError("builtin '" + problem + "' requires parameter '" + key + "'");
  return it->second;
}

inline RegularProblem<BigReal> anharmonic_problem(const std::string& name, const BigReal& g) {
  RegularProblem<BigReal> p;
  p.name = name;
  p.p0 = TruncSeries<BigReal>{BigReal(0), BigReal(2)};
  p.q0_base = g == 0 ? TruncSeries<BigReal>{BigReal(1)}
                     : TruncSeries<BigReal>{BigReal(1), BigReal(0), BigReal(0), BigReal(0), g};
  p.q0_E = TruncSeries<BigReal>{BigReal(-1)};
  p.envelope_W = TruncSeries<BigReal>{BigReal(0), BigReal(1)};
  p.envelope_integral = TruncSeries<BigReal>{BigReal(0), BigReal(0), from_decimal<BigReal>("0.5")};
  p.parity = ParityHint::even_potential;
  return p;
}

} // namespace detail

/// Catalog entries:
///   harmonic                      V = x^2, W = x
///   anharmonic    (g)             V = x^2 + g x^4, W = x
///   quantum_dot   (omega, lambda, l)  radial relative-motion equation of a
///                                 two-electron quantum dot, u = r^(l+1/2) e^(-omega r^2/4) f
/// Parameters are decimal strings parsed at the current precision.
inline ProblemDefinition builtin(const std::string& name, const std::map<std::string, std::string>& params = {}) {
  ProblemDefinition def;
  if (name == "harmonic") {
    def.problem = detail::anharmonic_problem("harmonic", BigReal(0));
  } else if (name == "anharmonic") {
    const std::string& g_text = detail::require_param(params, "g", name);
    const BigReal g = from_decimal<BigReal>(g_text);
    if (g < 0)
      throw SpecError("anharmonic: g must be non-negative");
    def.problem = detail::anharmonic_problem("anharmonic", g);
    def.parameters["g"] = g_text;
  } else if (name == "quantum_dot") {
    const std::string& omega_text = detail::require_param(params, "omega", name);
    const std::string& lambda_text = detail::require_param(params, "lambda", name);
    const std::string& ell_text = detail::require_param(params, "l", name);
    const BigReal omega = from_decimal<BigReal>(omega_text);
    const BigReal lambda = from_decimal<BigReal>(lambda_text);
    const BigReal ell = from_decimal<BigReal>(ell_text);
    if (!(omega > 0))
      throw SpecError("quantum_dot: omega must be positive");
    if (!(ell * 2 > -1))
      throw SpecError("quantum_dot: l must exceed -1/2");
    def.problem = quantum_dot_problem<BigReal>(omega, lambda, ell);
    def.parameters = {{"omega", omega_text}, {"lambda", lambda_text}, {"l", ell_text}};
    def.defaults.window = EnergyWindow{0, 6, 0.05};
    def.defaults.tol_stab = 5e-3;
    def.defaults.half_width = 10;
  } else {
    throw SpecError("unknown builtin problem '" + name + "' (known: harmonic, anharmonic, quantum_dot)");
  }
  return def;
}

namespace detail {

using nlohmann::json;

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

struct SpecReader {
  const json& root;
  std::map<std::string, std::string> params;

  const json& field(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object() || !obj.contains(key))
      throw SpecError("schema: " + path + key + " required" + context());
    return obj.at(key);
  }

  std::string context() const {
    const std::string kind = root.contains("kind") && root["kind"].is_string() ? root["kind"].get<std::string>() : "";
    return kind.empty() ? std::string() : " for kind=" + kind;
  }

  BigReal scalar(const json& v, const std::string& path) const {
    if (!v.is_string())
      throw SpecError("schema: " + path + " must be a decimal string");
    std::string text = v.get<std::string>();
    bool negate = false;
    std::string key = text;
    if (!key.empty() && key[0] == '-') {
      negate = true;
      key = key.substr(1);
    }
    if (auto it = params.find(key); it != params.end())
      text = negate ? "-" + it->second : it->second;
    try {
      BigReal value = from_decimal<BigReal>(text);
      if (!is_finite(value))
        throw SpecError("");
      return value;
    } catch (const SpecError&) {
      throw SpecError("schema: " + path + " is neither a decimal literal nor a known parameter ('" +
                      v.get<std::string>() + "')");
    }
  }

  double real(const json& v, const std::string& path) const { return to_double(scalar(v, path)); }

  TruncSeries<BigReal> poly(const json& obj, const std::string& key, const std::string& path = "") const {
    const json& arr = field(obj, key, path);
    if (!arr.is_array() || arr.empty())
      throw SpecError("schema: " + path + key + " must be a non-empty array of decimal strings");
    std::vector<BigReal> c;
    for (std::size_t i = 0; i < arr.size(); ++i)
      c.push_back(scalar(arr[i], path + key + "[" + std::to_string(i) + "]"));
    return TruncSeries<BigReal>(std::move(c));
  }
};

} // namespace detail

/// Parses a schema-v1 problem spec from text.
inline ProblemDefinition parse_spec(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw SpecError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                    e.what());
  }
  if (!root.is_object())
    throw SpecError("schema: top level must be an object");

  detail::SpecReader rd{root, {}};
  const json& version = rd.field(root, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != 1)
    throw SpecError("schema: schema_version must be 1");
  const json& kind_v = rd.field(root, "kind", "");
  if (!kind_v.is_string())
    throw SpecError("schema: kind must be \"regular\" or \"singular\"");
  const std::string kind = kind_v.get<std::string>();
  if (kind != "regular" && kind != "singular")
    throw SpecError("schema: kind must be \"regular\" or \"singular\", got \"" + kind + "\"");

  ProblemDefinition def;
  if (root.contains("parameters")) {
    const json& ps = root["parameters"];
    if (!ps.is_object())
      throw SpecError("schema: parameters must be an object of decimal strings");
    for (auto it = ps.begin(); it != ps.end(); ++it) {
      if (!it.value().is_string())
        throw SpecError("schema: parameters." + it.key() + " must be a decimal string");
      rational_from_decimal(it.value().get<std::string>());
      rd.params[it.key()] = it.value().get<std::string>();
    }
  }
  def.parameters = rd.params;
  const std::string name = root.contains("name") && root["name"].is_string() ? root["name"].get<std::string>()
                                                                              : std::string("custom");

  if (kind == "regular") {
    RegularProblem<BigReal> p;
    p.name = name;
    p.p0 = rd.poly(root, "p0");
    p.q0_base = rd.poly(root, "q0_base");
    p.q0_E = rd.poly(root, "q0_E");
    const json& env = rd.field(root, "envelope", "");
    p.envelope_W = rd.poly(env, "W", "envelope.");
    p.envelope_integral = rd.poly(env, "W_integral", "envelope.");
    if (root.contains("parity")) {
      const json& par = root["parity"];
      if (par == "even-potential")
        p.parity = ParityHint::even_potential;
      else if (par == "none")
        p.parity = ParityHint::none;
      else
        throw SpecError("schema: parity must be \"even-potential\" or \"none\"");
    }
    try {
      validate(p);
    } catch (const ContractError& e) {
      throw SpecError(std::string("schema: ") + e.what());
    }
    def.problem = std::move(p);
  } else {
    SingularProblem<BigReal> p;
    p.name = name;
    p.A = rd.poly(root, "A");
    p.B = rd.poly(root, "B");
    p.C_base = rd.poly(root, "C_base");
    p.C_E = rd.poly(root, "C_E");
    const json& env = rd.field(root, "envelope", "");
    p.envelope.power = rd.scalar(rd.field(env, "power", "envelope."), "envelope.power");
    p.envelope.gauss = rd.scalar(rd.field(env, "gauss", "envelope."), "envelope.gauss");
    if (root.contains("offset")) {
      const json& off = root["offset"];
      if (!off.is_object())
        throw SpecError("schema: offset must be an object");
      if (off.contains("ell"))
        p.offset.ell = rd.scalar(off["ell"], "offset.ell");
      if (off.contains("hbar_omega"))
        p.offset.hbar_omega = rd.scalar(off["hbar_omega"], "offset.hbar_omega");
      if (off.contains("omega_c"))
        p.offset.omega_c = rd.scalar(off["omega_c"], "offset.omega_c");
      if (off.contains("L_r"))
        p.offset.L_r = rd.scalar(off["L_r"], "offset.L_r");
    }
    def.problem = std::move(p);
    def.defaults.window = EnergyWindow{0, 6, 0.05};
    def.defaults.tol_stab = 5e-3;
    def.defaults.half_width = 10;
  }

  if (root.contains("defaults")) {
    const json& d = root["defaults"];
    if (!d.is_object())
      throw SpecError("schema: defaults must be an object");
    if (d.contains("window")) {
      const json& w = d["window"];
      if (!w.is_array() || (w.size() != 2 && w.size() != 3))
        throw SpecError("schema: defaults.window must be [min, max] or [min, max, step]");
      def.defaults.window.e_min = rd.real(w[0], "defaults.window[0]");
      def.defaults.window.e_max = rd.real(w[1], "defaults.window[1]");
      if (w.size() == 3)
        def.defaults.window.grid_step = rd.real(w[2], "defaults.window[2]");
      try {
        def.defaults.window.validate();
      } catch (const ContractError& e) {
        throw SpecError(std::string("schema: defaults.window: ") + e.what());
      }
    }
    if (d.contains("k_list")) {
      const json& ks = d["k_list"];
      if (!ks.is_array() || ks.empty())
        throw SpecError("schema: defaults.k_list must be a non-empty array of integers");
      def.defaults.k_list.clear();
      for (const json& k : ks) {
        if (!k.is_number_integer() || k.get<int>() < 4)
          throw SpecError("schema: defaults.k_list entries must be integers >= 4");
        def.defaults.k_list.push_back(k.get<int>());
      }
    }
    if (d.contains("tol_stab"))
      def.defaults.tol_stab = rd.real(d["tol_stab"], "defaults.tol_stab");
    if (d.contains("half_width"))
      def.defaults.half_width = rd.real(d["half_width"], "defaults.half_width");
  }

  if (const auto* sp = std::get_if<SingularProblem<BigReal>>(&def.problem)) {
    int k_top = 0;
    for (int k : def.defaults.k_list)
      k_top = std::max(k_top, k);
    try {
      check_indicial(*sp, k_top);
    } catch (const NumericError& e) {
      throw SpecError(std::string("indicial check failed: ") + e.what());
    }
  }
  return def;
}

inline ProblemDefinition load_spec(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw IoError("cannot open problem spec " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

namespace detail {

inline nlohmann::json poly_json(const TruncSeries<BigReal>& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : s.coeffs())
    arr.push_back(to_exact_decimal(c));
  return arr;
}

inline std::string double_text(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace detail

/// Schema-v1 JSON for a problem with all parameters already substituted.
inline std::string serialize(const ProblemDefinition& def) {
  using detail::poly_json;
  nlohmann::json root;
  root["schema_version"] = 1;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        root["name"] = p.name;
        if constexpr (std::is_same_v<P, RegularProblem<BigReal>>) {
          root["kind"] = "regular";
          root["p0"] = poly_json(p.p0);
          root["q0_base"] = poly_json(p.q0_base);
          root["q0_E"] = poly_json(p.q0_E);
          root["envelope"] = {{"W", poly_json(p.envelope_W)}, {"W_integral", poly_json(p.envelope_integral)}};
          root["parity"] = p.parity == ParityHint::even_potential ? "even-potential" : "none";
        } else {
          root["kind"] = "singular";
          root["A"] = poly_json(p.A);
          root["B"] = poly_json(p.B);
          root["C_base"] = poly_json(p.C_base);
          root["C_E"] = poly_json(p.C_E);
          root["envelope"] = {{"power", to_exact_decimal(p.envelope.power)},
                              {"gauss", to_exact_decimal(p.envelope.gauss)}};
          root["offset"] = {{"ell", to_exact_decimal(p.offset.ell)},
                            {"hbar_omega", to_exact_decimal(p.offset.hbar_omega)},
                            {"omega_c", to_exact_decimal(p.offset.omega_c)},
                            {"L_r", to_exact_decimal(p.offset.L_r)}};
        }
      },
      def.problem);
  root["defaults"] = {{"window",
                       {detail::double_text(def.defaults.window.e_min), detail::double_text(def.defaults.window.e_max),
                        detail::double_text(def.defaults.window.grid_step)}},
                      {"k_list", def.defaults.k_list},
                      {"tol_stab", detail::double_text(def.defaults.tol_stab)},
                      {"half_width", detail::double_text(def.defaults.half_width)}};
  return root.dump(2) + "\n";
}

} // namespace atem

#endif // ATEM_PROBLEMS_HPP
