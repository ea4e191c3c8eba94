#pragma once

/**
 * @file commands.hpp
 * @brief Command-line front end: transform | parse | koszul | verify | moments | expand.
 *
 * Exit codes
 *   0  success / verdict pass
 *   1  usage error, invalid configuration, or verdict fail
 *   2  operator text does not parse
 *   3  algebra mismatch
 *   4  truncation overflow
 *   5  annihilation guard failed (verify)
 *   6  quadrature failure
 *
 * Reports are JSON objects with keys in a fixed order; doubles are printed in
 * shortest round-trip form, so equal configurations give identical bytes.
 */

#include "mellin/asymptotics/koszul.hpp"
#include "mellin/errors.hpp"
#include "mellin/numerics/convolution.hpp"
#include "mellin/numerics/moments.hpp"
#include "mellin/numerics/parameter_expansion.hpp"
#include "mellin/numerics/verify.hpp"
#include "mellin/opparse/opparse.hpp"
#include "mellin/transform/functor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mellin::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kFail = 1,
  kParseError = 2,
  kAlgebraMismatch = 3,
  kTruncationOverflow = 4,
  kGuardFailure = 5,
  kQuadratureFailure = 6,
};

/// Settings shared by the subcommands; every field can come from the
/// --config file (INI key = value) and be overridden by flags.
struct RunConfig {
  int truncation = 12;  // N per variable
  int dmax = 8;         // shift-polynomial degree bound
  double quad_tolerance = 1e-10;
  double check_tolerance = 0.0;  // 0: the per-check default
  numerics::SGrid grid;
  std::string function;
  std::string output;

  void validate() const {
    if (truncation < 4) throw PreconditionFailed("truncation N must be at least 4");
    if (!(quad_tolerance > 0.0)) throw PreconditionFailed("quadrature tolerance must be positive");
    if (check_tolerance < 0.0) throw PreconditionFailed("check tolerance must be positive");
    if (grid.count < 1) throw PreconditionFailed("s-grid count must be at least 1");
  }

  double tolerance_or(double fallback) const { return check_tolerance > 0.0 ? check_tolerance : fallback; }
};

namespace detail {

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline std::vector<int> index_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& piece : split(text, ',')) {
    std::string trimmed;
    for (char c : piece)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(trimmed, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != trimmed.size()) throw PreconditionFailed("bad index list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

inline double number_arg(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw PreconditionFailed("bad " + what + " '" + text + "'");
  return v;
}

inline ore::Algebra algebra_from(const std::string& name) {
  if (name == "D") return ore::Algebra::D;
  if (name == "S") return ore::Algebra::S;
  if (name == "Dtilde") return ore::Algebra::Dtilde;
  throw PreconditionFailed("unknown algebra '" + name + "'");
}

inline Json report_json(const numerics::ResidualReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points)
    points.push_back({{"label", p.label},
                      {"s", complex_json(p.s)},
                      {"lhs", complex_json(p.lhs)},
                      {"rhs", complex_json(p.rhs)},
                      {"residual", p.residual},
                      {"relative", p.relative}});
  return {{"check", r.check},
          {"operator", r.operator_text},
          {"function", r.function_id},
          {"judged_on", r.judged_on == numerics::Judge::Relative ? "relative" : "absolute"},
          {"tolerance", r.tolerance},
          {"max_relative", r.max_relative},
          {"max_residual", r.max_residual},
          {"pass", r.pass},
          {"points", points}};
}

inline Json koszul_json(const asymptotics::KoszulReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json checks = Json::object();
    for (const auto& c : s.checks) checks[c.name] = c.passed;
    steps.push_back({{"variable", s.variable}, {"case", std::string(1, s.method)}, {"checks", checks}});
  }
  Json induced = Json::array();
  for (const auto& c : r.induced)
    induced.push_back({{"variable", c.variable},
                       {"action", asymptotics::induced_action_name(c.action)},
                       {"image", c.action == asymptotics::InducedAction::T ? "tau" : "-s"},
                       {"phi", c.phi},
                       {"witness", c.witness},
                       {"pass", c.passed}});
  return {{"I", r.I},
          {"J", r.J},
          {"arity", r.arity},
          {"N", r.order},
          {"verdict", asymptotics::verdict_name(r.verdict)},
          {"predicted", asymptotics::verdict_name(r.predicted)},
          {"steps", steps},
          {"extraction", r.extraction},
          {"induced_actions", induced},
          {"pass", r.passed()}};
}

inline opparse::ParseOptions with_algebra(ore::Algebra a) {
  opparse::ParseOptions opt;
  opt.algebra = a;
  return opt;
}

inline Json grid_json(const numerics::SGrid& g) {
  return {{"start", g.start}, {"stop", g.stop}, {"count", g.count}, {"offset", g.offset}};
}

}  // namespace detail

/**
 * Built-in test functions:
 *   zero | exp | exp:<c> | gaussian | bessel       (positive-ray, holomorphic)
 *   mode:<m>[:<a>]   r^a e^{-r-1/r} e^{i m theta}
 *   radial-mode2     mode:-2
 *   ladder           modes 0,-1,-2,-3,-4 with unit weights
 *   poly-s:<spec>    (1 + s + s^2/2) times the function <spec>
 */
inline numerics::TestFunction function_from_spec(const std::string& spec) {
  using namespace numerics;
  const auto parts = detail::split(spec, ':');
  const std::string head = parts.empty() ? std::string() : parts[0];
  if (spec == "zero") return zero_function();
  if (spec == "exp") return exp_ray();
  if (head == "exp" && parts.size() == 2) return exp_ray(detail::number_arg(parts[1], "rate"));
  if (spec == "gaussian") return gaussian_ray();
  if (spec == "bessel") return bessel_ray();
  if (spec == "radial-mode2") {
    TestFunction f = angular_mode(-2);
    f.id = "radial-mode2";
    return f;
  }
  if (spec == "ladder") return mode_ladder({0, -1, -2, -3, -4}, {1.0, 1.0, 1.0, 1.0, 1.0});
  if (head == "mode" && (parts.size() == 2 || parts.size() == 3)) {
    const double m = detail::number_arg(parts[1], "mode");
    if (m != std::floor(m)) throw PreconditionFailed("mode must be an integer");
    const double a = parts.size() == 3 ? detail::number_arg(parts[2], "exponent") : 0.0;
    return angular_mode(static_cast<int>(m), a);
  }
  if (head == "poly-s" && parts.size() >= 2) {
    const auto inner = function_from_spec(spec.substr(spec.find(':') + 1));
    return s_factor(inner, [](Complex s) { return 1.0 + s + 0.5 * s * s; }, "poly-s");
  }
  throw PreconditionFailed("unknown function spec '" + spec + "'");
}

/// geometric | linear | power-geometric[:c] | power-exp[:c]
inline numerics::ExpansionFunction expansion_from_spec(const std::string& spec) {
  const auto parts = detail::split(spec, ':');
  const std::string head = parts.empty() ? std::string() : parts[0];
  const double c = parts.size() == 2 ? detail::number_arg(parts[1], "exponent") : 1.5;
  if (parts.size() > 2) throw PreconditionFailed("unknown expansion family '" + spec + "'");
  if (spec == "geometric") return numerics::geometric_family();
  if (spec == "linear") return numerics::linear_family();
  if (head == "power-geometric") return numerics::power_geometric_family(c);
  if (head == "power-exp") return numerics::power_exp_family(c);
  throw PreconditionFailed("unknown expansion family '" + spec + "'");
}

namespace detail {

inline int emit(const Json& report, const RunConfig& config, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (config.output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw PreconditionFailed("cannot write report to " + config.output);
  file << text;
  return kOk;
}

inline Json config_json(const RunConfig& c) {
  return {{"N", c.truncation},
          {"dmax", c.dmax},
          {"quad_tolerance", c.quad_tolerance},
          {"check_tolerance", c.check_tolerance},
          {"grid", grid_json(c.grid)},
          {"function", c.function}};
}

}  // namespace detail

inline int cmd_transform(const std::string& expr, bool inverse, std::ostream& out) {
  const ore::Algebra source = inverse ? ore::Algebra::S : ore::Algebra::D;
  const ore::OreOperator p = opparse::parse(expr, detail::with_algebra(source));
  out << opparse::format(inverse ? transform::inverse_mellin_op(p) : transform::mellin_op(p)) << "\n";
  return kOk;
}

inline int cmd_parse(const std::string& expr, const std::optional<std::string>& algebra, bool json,
                     std::ostream& out) {
  opparse::ParseOptions opt;
  if (algebra) opt.algebra = detail::algebra_from(*algebra);
  const ore::OreOperator p = opparse::parse(expr, opt);
  if (!json) {
    out << opparse::format(p) << "\n";
    return kOk;
  }
  const Json j = {{"input", expr},
                  {"algebra", ore::algebra_name(p.algebra())},
                  {"arity", p.arity()},
                  {"terms", p.terms().size()},
                  {"canonical", opparse::format(p)}};
  out << j.dump(2) << "\n";
  return kOk;
}

inline int cmd_koszul(const std::string& i_text, const std::string& j_text, int arity, unsigned seed,
                      const RunConfig& config, std::ostream& out) {
  asymptotics::KoszulOptions opt;
  opt.arity = arity;
  opt.dmax = config.dmax;
  opt.seed = seed;
  const auto report = asymptotics::koszul_reduce(detail::index_list(i_text), detail::index_list(j_text),
                                                 config.truncation, opt);
  Json j = {{"command", "koszul"}, {"config", detail::config_json(config)}, {"report", detail::koszul_json(report)}};
  detail::emit(j, config, out);
  return report.passed() ? kOk : kFail;
}

inline int cmd_verify(const std::string& op_text, const RunConfig& config, std::ostream& out) {
  const ore::OreOperator p = opparse::parse(op_text, detail::with_algebra(ore::Algebra::D));
  const numerics::TestFunction f = function_from_spec(config.function.empty() ? "exp" : config.function);
  Json j = {{"command", "verify"},
            {"config", detail::config_json(config)},
            {"operator", opparse::format(p)},
            {"image", opparse::format(transform::mellin_op(p))}};
  const auto guard = numerics::annihilation_guard(p, f);
  j["guard"] = detail::report_json(guard);
  if (!guard.pass) {
    j["verdict"] = "guard-failure";
    detail::emit(j, config, out);
    return kGuardFailure;
  }
  numerics::RayOptions ray;
  ray.tolerance = std::max(config.quad_tolerance * 1e-2, 1e-14);
  const auto report = numerics::verify_commutation(p, f, config.grid, config.tolerance_or(1e-8), ray);
  j["commutation"] = detail::report_json(report);
  j["verdict"] = report.pass ? "pass" : "fail";
  detail::emit(j, config, out);
  return report.pass ? kOk : kFail;
}

inline int cmd_moments(int k_max, Complex s, const RunConfig& config, std::ostream& out) {
  const numerics::TestFunction f = function_from_spec(config.function.empty() ? "radial-mode2" : config.function);
  numerics::QuadOptions q;
  q.tolerance = config.quad_tolerance;
  const auto table = numerics::moment_table(f, k_max, s, q);
  Json inf = Json::array();
  Json zero = Json::array();
  for (int k = 0; k <= k_max; ++k) {
    inf.push_back({{"k", k}, {"value", detail::complex_json(table.infinity[static_cast<std::size_t>(k)])},
                   {"error", table.error_infinity[static_cast<std::size_t>(k)]}});
    if (k >= 1)
      zero.push_back({{"k", k}, {"value", detail::complex_json(table.zero[static_cast<std::size_t>(k)])},
                      {"error", table.error_zero[static_cast<std::size_t>(k)]}});
  }
  Json stokes = Json::array();
  bool pass = true;
  for (int k = 0; k <= k_max; ++k) {
    const auto r = numerics::stokes_identity_check(f, k, s, q, config.tolerance_or(1e-6));
    pass = pass && r.pass;
    stokes.push_back(detail::report_json(r));
  }
  Json j = {{"command", "moments"},
            {"config", detail::config_json(config)},
            {"function", f.id},
            {"s", detail::complex_json(s)},
            {"moments", {{"infinity", inf}, {"zero", zero}}},
            {"stokes", stokes}};
  if (f.s_dependent || f.separable) {
    const auto eps = numerics::epsilon_commutation_check(f, s, k_max, q, config.tolerance_or(1e-6));
    pass = pass && eps.pass;
    j["epsilon_commutation"] = detail::report_json(eps);
  }
  j["verdict"] = pass ? "pass" : "fail";
  detail::emit(j, config, out);
  return pass ? kOk : kFail;
}

inline int cmd_expand(const std::string& family, const numerics::ExpansionOptions& opt, double rho,
                      const RunConfig& config, std::ostream& out) {
  const auto fn = expansion_from_spec(family);
  const auto table = numerics::parameter_expansion(fn, opt);
  const auto recon = numerics::reconstruction_check(fn, table, rho, config.tolerance_or(1e-8));
  Json norms = Json::array();
  for (std::size_t a = 0; a < table.norms.size(); ++a)
    norms.push_back({{"alpha", a}, {"norm", table.norms[a]},
                     {"scaled", table.norms[a] * std::pow(opt.R, static_cast<double>(a))}});
  Json j = {{"command", "expand"},
            {"config", detail::config_json(config)},
            {"family", fn.id},
            {"T0", detail::complex_json(opt.T0)},
            {"R", opt.R},
            {"rho", rho},
            {"alpha_max", opt.alpha_max},
            {"t_grid", opt.t_grid},
            {"norms", norms},
            {"bound", {{"constant", table.bound_constant}, {"sup_f", table.sup_f}, {"pass", table.bound_holds}}},
            {"partial_sums", table.partial_sums(rho)},
            {"reconstruction", detail::report_json(recon)}};
  bool pass = recon.pass && table.bound_holds;
  if (fn.euler_eigenvalue) {
    const auto ann = numerics::coefficient_annihilation_check(fn, opt, config.tolerance_or(1e-8));
    j["annihilation"] = detail::report_json(ann);
    pass = pass && ann.pass;
  }
  j["verdict"] = pass ? "pass" : "fail";
  detail::emit(j, config, out);
  return pass ? kOk : kFail;
}

/// Parses arguments and dispatches; library errors become exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Algebraic Mellin transform toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI file with run settings (key = value)");

  RunConfig config;
  app.add_option("--N", config.truncation, "truncation order per variable")->capture_default_str();
  app.add_option("--dmax", config.dmax, "shift-polynomial degree bound")->capture_default_str();
  app.add_option("--quad-tol", config.quad_tolerance, "quadrature tolerance")->capture_default_str();
  app.add_option("--tol", config.check_tolerance, "check tolerance (0: per-check default)");
  app.add_option("--s-start", config.grid.start, "s-grid start")->capture_default_str();
  app.add_option("--s-stop", config.grid.stop, "s-grid stop")->capture_default_str();
  app.add_option("--s-count", config.grid.count, "s-grid point count")->capture_default_str();
  app.add_option("--s-offset", config.grid.offset, "imaginary contour offset")->capture_default_str();
  app.add_option("--function", config.function, "test-function spec");
  app.add_option("--output,-o", config.output, "report path (default: stdout)");

  std::string expr;
  bool inverse = false;
  auto* transform_cmd = app.add_subcommand("transform", "Mellin image of an operator");
  transform_cmd->add_option("expr", expr, "operator text")->required();
  transform_cmd->add_flag("--inverse", inverse, "map S back to D");

  std::optional<std::string> algebra;
  bool json = false;
  auto* parse_cmd = app.add_subcommand("parse", "canonical form of an operator");
  parse_cmd->add_option("expr", expr, "operator text")->required();
  parse_cmd->add_option("--algebra", algebra, "D | S | Dtilde");
  parse_cmd->add_flag("--json", json, "print a JSON record");

  std::string i_text, j_text;
  int arity = 0;
  unsigned seed = asymptotics::KoszulOptions{}.seed;
  auto* koszul_cmd = app.add_subcommand("koszul", "Koszul reduction for a partition (I, J)");
  koszul_cmd->add_option("--I", i_text, "zero-type indices, comma separated");
  koszul_cmd->add_option("--J", j_text, "infinity-type indices, comma separated");
  koszul_cmd->add_option("--p", arity, "number of variables (default: largest index)");
  koszul_cmd->add_option("--seed", seed, "seed for the random witnesses");

  std::string op_text;
  auto* verify_cmd = app.add_subcommand("verify", "check M(P) F = 0 for F the Mellin transform of f");
  verify_cmd->add_option("operator", op_text, "operator in D")->required();

  int k_max = 8;
  double s_re = 0.0, s_im = 0.0;
  std::string spec;
  auto* moments_cmd = app.add_subcommand("moments", "moment table and Stokes identities");
  moments_cmd->add_option("spec", spec, "test-function spec");
  moments_cmd->add_option("--k", k_max, "largest moment index")->check(CLI::Range(0, 40));
  moments_cmd->add_option("--s", s_re, "real part of s");
  moments_cmd->add_option("--s-im", s_im, "imaginary part of s");

  numerics::ExpansionOptions expand_opt;
  double t0_re = 0.0, t0_im = 0.0;
  double rho = 0.0;
  std::string family = "geometric";
  auto* expand_cmd = app.add_subcommand("expand", "Cauchy expansion in a parameter");
  expand_cmd->add_option("family", family, "expansion family");
  expand_cmd->add_option("--R", expand_opt.R, "contour radius")->capture_default_str();
  expand_cmd->add_option("--T0", t0_re, "expansion centre (real part)");
  expand_cmd->add_option("--T0-im", t0_im, "expansion centre (imaginary part)");
  expand_cmd->add_option("--alpha-max", expand_opt.alpha_max, "largest coefficient index")->capture_default_str();
  expand_cmd->add_option("--rho", rho, "reconstruction radius (default R/2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFail;
  }

  try {
    config.validate();
    if (*transform_cmd) return cmd_transform(expr, inverse, out);
    if (*parse_cmd) return cmd_parse(expr, algebra, json, out);
    if (*koszul_cmd) return cmd_koszul(i_text, j_text, arity, seed, config, out);
    if (*verify_cmd) return cmd_verify(op_text, config, out);
    if (*moments_cmd) {
      if (!spec.empty()) config.function = spec;
      return cmd_moments(k_max, Complex(s_re, s_im), config, out);
    }
    if (*expand_cmd) {
      expand_opt.T0 = Complex(t0_re, t0_im);
      return cmd_expand(family, expand_opt, rho > 0.0 ? rho : expand_opt.R / 2.0, config, out);
    }
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const MixedAlgebra& e) {
    err << "algebra mismatch: " << e.what() << "\n";
    return kAlgebraMismatch;
  } catch (const TruncationOverflow& e) {
    err << "truncation overflow: " << e.what() << "\n";
    return kTruncationOverflow;
  } catch (const QuadratureFailure& e) {
    err << "quadrature failure: " << e.what() << "\n";
    return kQuadratureFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}

/// In-process entry point; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"mellin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mellin::cli
