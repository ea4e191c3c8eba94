#pragma once

/**
 * @file parameter_expansion.hpp
 * @brief Taylor coefficients in a holomorphic parameter by the Cauchy formula.
 *
 * u_a(t) = (1/2i pi) oint f(t, xi) (xi - T0)^{-a-1} dxi on |xi - T0| = R,
 * evaluated with the periodic trapezoid rule. The trapezoid sum itself obeys
 * |u_a(t)| R^a <= sup |f| on the circle.
 */

#include "mellin/errors.hpp"
#include "mellin/numerics/quadrature.hpp"
#include "mellin/numerics/report.hpp"
#include "mellin/numerics/verify.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mellin::numerics {

struct ExpansionFunction {
  std::string id;
  std::function<Complex(Complex t, Complex T)> f;
  std::optional<Complex> euler_eigenvalue;  // c with (t d/dt - c) f = 0
};

/// e^{-t} / (1 - T): every coefficient equals e^{-t}.
inline ExpansionFunction geometric_family() {
  return {"geometric", [](Complex t, Complex T) { return std::exp(-t) / (1.0 - T); }, std::nullopt};
}

/// e^{-t} T
inline ExpansionFunction linear_family() {
  return {"linear", [](Complex t, Complex T) { return std::exp(-t) * T; }, std::nullopt};
}

/// t^c / (1 - T)
inline ExpansionFunction power_geometric_family(Complex c) {
  return {"power-geometric", [c](Complex t, Complex T) { return std::pow(t, c) / (1.0 - T); }, c};
}

/// t^c e^T
inline ExpansionFunction power_exp_family(Complex c) {
  return {"power-exp", [c](Complex t, Complex T) { return std::pow(t, c) * std::exp(T); }, c};
}

struct ExpansionOptions {
  Complex T0 = 0.0;
  double R = 0.5;
  int alpha_max = 12;
  std::vector<double> t_grid = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  int nodes = 64;
};

struct ExpansionTable {
  ExpansionOptions options;
  std::vector<std::vector<Complex>> u;  // u[a][i] = u_a(t_i)
  std::vector<double> norms;            // max_i |u_a(t_i)|
  double sup_f = 0.0;                   // max |f| over grid x circle
  double bound_constant = 0.0;          // max_a norms[a] R^a
  bool bound_holds = false;             // bound_constant <= sup_f

  /// sum_{b <= a} norms[b] rho^b for a = 0..alpha_max.
  std::vector<double> partial_sums(double rho) const {
    std::vector<double> out;
    double acc = 0.0;
    for (std::size_t a = 0; a < norms.size(); ++a) {
      acc += norms[a] * std::pow(rho, static_cast<double>(a));
      out.push_back(acc);
    }
    return out;
  }
};

namespace detail {

/// All u_a(t) for a = 0..alpha_max at one t; also returns max |f| on the circle.
inline std::vector<Complex> cauchy_coefficients(const std::function<Complex(Complex, Complex)>& f, Complex t,
                                                const ExpansionOptions& opt, double* sup = nullptr) {
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(opt.alpha_max) + 1);
  double m = 0.0;
  for (int j = 0; j < opt.nodes; ++j) {
    const double phi = 2.0 * kPi * j / opt.nodes;
    const Complex v = f(t, opt.T0 + std::polar(opt.R, phi));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw QuadratureFailure("expansion integrand is not finite on the Cauchy circle");
    m = std::max(m, std::abs(v));
    for (int a = 0; a <= opt.alpha_max; ++a) sums[static_cast<std::size_t>(a)].add(v * std::polar(1.0, -a * phi));
  }
  if (sup) *sup = m;
  std::vector<Complex> out;
  for (int a = 0; a <= opt.alpha_max; ++a)
    out.push_back(sums[static_cast<std::size_t>(a)].value() / (opt.nodes * std::pow(opt.R, a)));
  return out;
}

}  // namespace detail

inline ExpansionTable parameter_expansion(const ExpansionFunction& fn, const ExpansionOptions& opt = {}) {
  if (!(opt.R > 0.0)) throw PreconditionFailed("expansion radius must be positive");
  if (opt.alpha_max < 0) throw PreconditionFailed("alpha_max must be non-negative");
  if (opt.nodes <= 2 * opt.alpha_max) throw PreconditionFailed("too few contour nodes for alpha_max");
  ExpansionTable table;
  table.options = opt;
  const std::size_t n_alpha = static_cast<std::size_t>(opt.alpha_max) + 1;
  table.u.assign(n_alpha, std::vector<Complex>(opt.t_grid.size()));
  table.norms.assign(n_alpha, 0.0);
  for (std::size_t i = 0; i < opt.t_grid.size(); ++i) {
    double sup = 0.0;
    const auto coeffs = detail::cauchy_coefficients(fn.f, opt.t_grid[i], opt, &sup);
    table.sup_f = std::max(table.sup_f, sup);
    for (std::size_t a = 0; a < n_alpha; ++a) {
      table.u[a][i] = coeffs[a];
      table.norms[a] = std::max(table.norms[a], std::abs(coeffs[a]));
    }
  }
  for (std::size_t a = 0; a < n_alpha; ++a)
    table.bound_constant = std::max(table.bound_constant, table.norms[a] * std::pow(opt.R, static_cast<double>(a)));
  table.bound_holds = table.bound_constant <= table.sup_f * (1.0 + 1e-12);
  return table;
}

/**
 * sum_{a <= alpha_max} u_a(t) (T - T0)^a against f(t, T) on |T - T0| = rho,
 * judged on the absolute residual; the relative residual is reported too.
 */
inline ResidualReport reconstruction_check(const ExpansionFunction& fn, const ExpansionTable& table, double rho,
                                           double tolerance = 1e-8, int angles = 8) {
  ResidualReport report;
  report.check = "reconstruction";
  report.function_id = fn.id;
  report.tolerance = tolerance;
  report.judged_on = Judge::Absolute;
  const auto& opt = table.options;
  for (std::size_t i = 0; i < opt.t_grid.size(); ++i) {
    for (int k = 0; k < angles; ++k) {
      const Complex d = std::polar(rho, 2.0 * kPi * k / angles);
      Complex series = 0.0;
      for (int a = opt.alpha_max; a >= 0; --a) series = series * d + table.u[static_cast<std::size_t>(a)][i];
      const Complex exact = fn.f(opt.t_grid[i], opt.T0 + d);
      report.add({"t=" + std::to_string(opt.t_grid[i]) + ",k=" + std::to_string(k), opt.T0 + d, series, exact,
                  std::abs(series - exact), relative_difference(series, exact)});
    }
  }
  return report;
}

/// For f = t^c w(T): each u_a satisfies (t d/dt - c) u_a = 0. The t-derivative
/// of u_a comes from a second Cauchy integral in t; judged on the absolute
/// pointwise residual.
inline ResidualReport coefficient_annihilation_check(const ExpansionFunction& fn, const ExpansionOptions& opt,
                                                     double tolerance = 1e-8, int t_nodes = 32) {
  if (!fn.euler_eigenvalue) throw PreconditionFailed(fn.id + " carries no Euler eigenvalue");
  const Complex c = *fn.euler_eigenvalue;
  ResidualReport report;
  report.check = "coefficient_annihilation";
  report.operator_text = "th - c";
  report.function_id = fn.id;
  report.tolerance = tolerance;
  report.judged_on = Judge::Absolute;
  for (double t : opt.t_grid) {
    const double radius = t / 3.0;
    std::vector<CompensatedSum> deriv(static_cast<std::size_t>(opt.alpha_max) + 1);
    for (int j = 0; j < t_nodes; ++j) {
      const double phi = 2.0 * kPi * j / t_nodes;
      const auto u = detail::cauchy_coefficients(fn.f, t + std::polar(radius, phi), opt);
      for (std::size_t a = 0; a < u.size(); ++a) deriv[a].add(u[a] * std::polar(1.0, -phi));
    }
    const auto u0 = detail::cauchy_coefficients(fn.f, t, opt);
    for (std::size_t a = 0; a < u0.size(); ++a) {
      const Complex du = deriv[a].value() / (t_nodes * radius);
      const Complex lhs = t * du;
      const Complex rhs = c * u0[a];
      report.add({"t=" + std::to_string(t) + ",a=" + std::to_string(a), t, lhs, rhs, std::abs(lhs - rhs),
                  relative_difference(lhs, rhs)});
    }
  }
  return report;
}

}  // namespace mellin::numerics
