#pragma once

/**
 * @file test_function.hpp
 * @brief Smooth functions on C* with exact Wirtinger partials, built from
 *        combinators.
 *
 * Envelope modes are rho(r) e^{i m theta} with rho = r^a exp(-r - 1/r), flat
 * at 0 and infinity. For f = rho(r) e^{i m theta}:
 *   df/dxi    = 1/2 e^{i(m-1)theta} (rho' + m rho / r)
 *   df/dxibar = 1/2 e^{i(m+1)theta} (rho' - m rho / r)
 * Holomorphic ray functions (exp, gaussian, bessel) decay only along the
 * positive ray and serve the Mellin transform and the verification harness.
 */

#include "mellin/errors.hpp"
#include "mellin/numerics/quadrature.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mellin::numerics {

using Fn2 = std::function<Complex(Complex t, Complex s)>;
using SFactor = std::function<Complex(Complex s)>;

enum class Domain {
  Plane,  // rapid decay on all of C* (envelope modes)
  Ray,    // holomorphic, rapid decay along (0, inf) only
};

/// Radii outside which |f| is negligible; the 2-D grids live inside.
struct DecayCertificate {
  double r_min = 1e-2;
  double r_max = 1e2;
};

struct TestFunction {
  std::string id;
  Fn2 value;
  Fn2 d_xi;     // Wirtinger d/dxi
  Fn2 d_xibar;  // Wirtinger d/dxibar
  Domain domain = Domain::Plane;
  DecayCertificate decay;
  bool s_dependent = false;
  bool separable = true;  // s-shifts can be evaluated pointwise

  Complex operator()(Complex t, Complex s = 0.0) const { return value(t, s); }

  /// xi df/dxi, the Euler derivative.
  Complex euler(Complex t, Complex s = 0.0) const { return t * d_xi(t, s); }
};

/// rho(r) e^{i m theta}, rho = r^a exp(-r - 1/r).
inline TestFunction angular_mode(int m, double a = 0.0) {
  auto rho = [a](double r) { return std::pow(r, a) * std::exp(-r - 1.0 / r); };
  auto drho = [a, rho](double r) { return rho(r) * (a / r - 1.0 + 1.0 / (r * r)); };
  TestFunction f;
  f.id = "mode:" + std::to_string(m) + (a != 0.0 ? ":" + std::to_string(a) : "");
  f.value = [m, rho](Complex t, Complex) {
    const double r = std::abs(t);
    return rho(r) * std::polar(1.0, m * std::arg(t));
  };
  f.d_xi = [m, rho, drho](Complex t, Complex) {
    const double r = std::abs(t);
    return 0.5 * (drho(r) + m * rho(r) / r) * std::polar(1.0, (m - 1) * std::arg(t));
  };
  f.d_xibar = [m, rho, drho](Complex t, Complex) {
    const double r = std::abs(t);
    return 0.5 * (drho(r) - m * rho(r) / r) * std::polar(1.0, (m + 1) * std::arg(t));
  };
  return f;
}

inline TestFunction zero_function() {
  TestFunction f;
  f.id = "zero";
  f.value = f.d_xi = f.d_xibar = [](Complex, Complex) { return Complex(0.0); };
  return f;
}

inline TestFunction scale(const TestFunction& f, Complex c) {
  TestFunction g = f;
  g.id = "scale(" + f.id + ")";
  g.value = [v = f.value, c](Complex t, Complex s) { return c * v(t, s); };
  g.d_xi = [v = f.d_xi, c](Complex t, Complex s) { return c * v(t, s); };
  g.d_xibar = [v = f.d_xibar, c](Complex t, Complex s) { return c * v(t, s); };
  return g;
}

inline TestFunction sum(const TestFunction& f, const TestFunction& g) {
  TestFunction h;
  h.id = "sum(" + f.id + "," + g.id + ")";
  h.value = [a = f.value, b = g.value](Complex t, Complex s) { return a(t, s) + b(t, s); };
  h.d_xi = [a = f.d_xi, b = g.d_xi](Complex t, Complex s) { return a(t, s) + b(t, s); };
  h.d_xibar = [a = f.d_xibar, b = g.d_xibar](Complex t, Complex s) { return a(t, s) + b(t, s); };
  h.domain = (f.domain == Domain::Plane && g.domain == Domain::Plane) ? Domain::Plane : Domain::Ray;
  h.decay = {std::min(f.decay.r_min, g.decay.r_min), std::max(f.decay.r_max, g.decay.r_max)};
  h.s_dependent = f.s_dependent || g.s_dependent;
  h.separable = f.separable && g.separable;
  return h;
}

/// Sum of weights[i] * angular_mode(modes[i], a).
inline TestFunction mode_ladder(const std::vector<int>& modes, const std::vector<Complex>& weights,
                                double a = 0.0) {
  if (modes.empty()) return zero_function();
  TestFunction f = scale(angular_mode(modes[0], a), weights.at(0));
  for (std::size_t i = 1; i < modes.size(); ++i) f = sum(f, scale(angular_mode(modes[i], a), weights.at(i)));
  f.id = "ladder";
  return f;
}

/// phi(s) f(t): a separable s-dependence.
inline TestFunction s_factor(const TestFunction& f, SFactor phi, const std::string& name) {
  TestFunction g = f;
  g.id = name + "*" + f.id;
  g.value = [v = f.value, phi](Complex t, Complex s) { return phi(s) * v(t, s); };
  g.d_xi = [v = f.d_xi, phi](Complex t, Complex s) { return phi(s) * v(t, s); };
  g.d_xibar = [v = f.d_xibar, phi](Complex t, Complex s) { return phi(s) * v(t, s); };
  g.s_dependent = true;
  return g;
}

/// Holomorphic function on C* with derivative df/dt.
inline TestFunction holomorphic(std::string id, std::function<Complex(Complex)> f,
                                std::function<Complex(Complex)> df) {
  TestFunction g;
  g.id = std::move(id);
  g.value = [f](Complex t, Complex) { return f(t); };
  g.d_xi = [df](Complex t, Complex) { return df(t); };
  g.d_xibar = [](Complex, Complex) { return Complex(0.0); };
  g.domain = Domain::Ray;
  return g;
}

/// e^{-c t}
inline TestFunction exp_ray(double c = 1.0) {
  return holomorphic(c == 1.0 ? "exp" : "exp:" + std::to_string(c),
                     [c](Complex t) { return std::exp(-c * t); },
                     [c](Complex t) { return -c * std::exp(-c * t); });
}

/// e^{-t^2}
inline TestFunction gaussian_ray() {
  return holomorphic("gaussian", [](Complex t) { return std::exp(-t * t); },
                     [](Complex t) { return -2.0 * t * std::exp(-t * t); });
}

/// e^{-t - 1/t}, rapidly decaying at both ends of the ray.
inline TestFunction bessel_ray() {
  return holomorphic("bessel", [](Complex t) { return std::exp(-t - 1.0 / t); },
                     [](Complex t) { return (1.0 / (t * t) - 1.0) * std::exp(-t - 1.0 / t); });
}

/// Largest |f| on the certificate circles relative to the largest |f| on a
/// radial sample; small values support the decay certificate.
inline double decay_spot_check(const TestFunction& f, Complex s = 0.0) {
  double edge = 0.0;
  double bulk = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double phi = 2.0 * kPi * k / 16;
    edge = std::max({edge, std::abs(f(std::polar(f.decay.r_min, phi), s)),
                     std::abs(f(std::polar(f.decay.r_max, phi), s))});
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) bulk = std::max(bulk, std::abs(f(std::polar(r, phi), s)));
  }
  return bulk == 0.0 ? 0.0 : edge / bulk;
}

}  // namespace mellin::numerics
