#pragma once

/**
 * @file convolution.hpp
 * @brief The Cauchy-kernel convolution (K*f)(t) and its expansions at 0 and
 *        infinity.
 *
 * (K*f)(t) = (1/2i pi) int f(xi) (1 - xi/t)^-1 dmu = -(1/pi) int f t/(t - xi) dA/|xi|^2.
 * The pole at xi = t is split off with the Gaussian partition
 * chi(rho) = exp(-(rho/h)^2), h = |t|/8, rho = |xi - t|:
 *   near: in polar coordinates (rho, psi) around t the measure rho drho cancels
 *         the pole, leaving the smooth integrand (t/pi) chi f e^{-i psi}/|xi|^2;
 *   far:  (1 - chi) vanishes to second order at t, so the log-polar integrand
 *         is smooth.
 */

#include "mellin/errors.hpp"
#include "mellin/numerics/moments.hpp"
#include "mellin/numerics/quadrature.hpp"
#include "mellin/numerics/report.hpp"
#include "mellin/numerics/test_function.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mellin::numerics {

namespace detail {

inline Complex convolution_at_resolution(const TestFunction& f, Complex t, Complex s, int panels, int angles) {
  const double h = std::abs(t) / 8.0;
  const double reach = 6.5 * h;  // chi < 5e-19 beyond

  const Complex near = tensor_integral(
      [&](double rho, double psi) {
        const Complex e = std::polar(1.0, psi);
        const Complex xi = t + rho * e;
        const double x = rho / h;
        return std::exp(-x * x) * f(xi, s) / (std::norm(xi) * e);
      },
      0.0, reach, panels / 4, angles);

  const Complex far = tensor_integral(
      [&](double u, double theta) -> Complex {
        const Complex xi = std::polar(std::exp(u), theta);
        const Complex d = t - xi;
        const double x2 = std::norm(d) / (h * h);
        if (x2 < 1e-24) return 0.0;
        return -std::expm1(-x2) * f(xi, s) * t / d;
      },
      std::log(f.decay.r_min), std::log(f.decay.r_max), panels, angles);

  return (t * near - far) / kPi;
}

}  // namespace detail

inline Estimate cauchy_convolve(const TestFunction& f, Complex t, Complex s = 0.0, const QuadOptions& opt = {}) {
  if (t == Complex(0.0)) throw SingularEvaluation("K*f is not evaluated at t = 0");
  detail::require_plane(f, "cauchy_convolve");
  const int panels = opt.panels;
  const int angles = opt.angles;
  const Complex coarse = detail::convolution_at_resolution(f, t, s, panels, angles);
  const Complex fine = detail::convolution_at_resolution(f, t, s, 2 * panels, 2 * angles);
  Estimate e{fine, std::abs(fine - coarse)};
  detail::check_error(e.error, e.value, opt.tolerance, "cauchy_convolve");
  return e;
}

/// K*f minus its expansion through order n at the given points.
/// Infinity: sum_{k=0..n} c^inf_k t^-k.  Zero: sum_{k=1..n} c^0_k t^k.
inline std::vector<Complex> expansion_remainders(const TestFunction& f, int n, Side side,
                                                 const std::vector<Complex>& points, Complex s = 0.0,
                                                 const QuadOptions& opt = {}) {
  if (n < 0) throw IndexOutOfRange("expansion order must be non-negative");
  const MomentTable table = moment_table(f, std::max(n, 1), s, opt);
  std::vector<Complex> out;
  for (Complex t : points) {
    Complex r = cauchy_convolve(f, t, s, opt).value;
    if (side == Side::Infinity) {
      for (int k = 0; k <= n; ++k) r -= table.infinity[static_cast<std::size_t>(k)] * std::pow(t, -k);
    } else {
      for (int k = 1; k <= n; ++k) r -= table.zero[static_cast<std::size_t>(k)] * std::pow(t, k);
    }
    out.push_back(r);
  }
  return out;
}

/**
 * Remainder scaling across radius doublings. For side infinity t runs over
 * radii e^{i arg}; for side zero over (1/radii) e^{i arg}. Each consecutive
 * pair contributes a point with lhs = log2 |R_i / R_{i+1}|, rhs = n + 1 and
 * relative = |lhs - rhs|; the default tolerance 0.5 is the band
 * [2^{n+1/2}, 2^{n+3/2}] on the ratio.
 */
inline ResidualReport asymptotic_remainder_check(const TestFunction& f, int n, const std::vector<double>& radii,
                                                 Side side = Side::Infinity, double arg = 0.3,
                                                 Complex s = 0.0, const QuadOptions& opt = {},
                                                 double tolerance = 0.5) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw PreconditionFailed("radii must be increasing");
  for (double r : radii)
    if (!(r > 1.0)) throw PreconditionFailed("radii must lie outside the unit circle");
  std::vector<Complex> points;
  for (double r : radii) points.push_back(std::polar(side == Side::Infinity ? r : 1.0 / r, arg));
  const auto rem = expansion_remainders(f, n, side, points, s, opt);

  ResidualReport report;
  report.check = std::string("remainder:") + side_name(side) + ":n=" + std::to_string(n);
  report.function_id = f.id;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i + 1 < rem.size(); ++i) {
    const double a = std::abs(rem[i]);
    const double b = std::abs(rem[i + 1]);
    const std::string label = "R(" + std::to_string(radii[i]) + ")/R(" + std::to_string(radii[i + 1]) + ")";
    if (a == 0.0 && b == 0.0) {
      report.add({label, s, 0.0, 0.0, 0.0, 0.0});
      continue;
    }
    const double lg = (a == 0.0 || b == 0.0) ? INFINITY : std::log2(a / b);
    const double target = n + 1.0;
    report.add({label, s, lg, target, std::abs(lg - target), std::abs(lg - target)});
  }
  return report;
}

}  // namespace mellin::numerics
