#pragma once

/**
 * @file quadrature.hpp
 * @brief Tensor rules for integrals over C*: Gauss-Legendre panels in one
 *        coordinate, periodic trapezoid in the angle.
 */

#include "mellin/rational.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace mellin::numerics {

inline constexpr double kPi = boost::math::constants::pi<double>();

/// Neumaier-compensated complex accumulator; summation order is fixed by the caller.
class CompensatedSum {
 public:
  void add(Complex x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  struct Real {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
      else carry += (x - t) + sum;
      sum = t;
    }
    double value() const { return sum + carry; }
  };
  Real re_;
  Real im_;
};

/// Composite 20-point Gauss-Legendre nodes and weights on [a, b].
inline std::vector<std::pair<double, double>> gauss_panels(double a, double b, int panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(panels) * 20);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        out.emplace_back(mid, w[i] * half);
        continue;
      }
      out.emplace_back(mid - half * x[i], w[i] * half);
      out.emplace_back(mid + half * x[i], w[i] * half);
    }
  }
  return out;
}

/// Integral over [a, b] x [0, 2pi) of F(x, phi) with `panels` Gauss panels
/// in x and `angles` trapezoid nodes in phi (offset by `phase`).
template <class F>
Complex tensor_integral(F&& integrand, double a, double b, int panels, int angles, double phase = 0.0) {
  const auto nodes = gauss_panels(a, b, panels);
  const double dphi = 2.0 * kPi / angles;
  CompensatedSum total;
  for (const auto& [x, wx] : nodes) {
    CompensatedSum ring;
    for (int k = 0; k < angles; ++k) ring.add(integrand(x, phase + k * dphi));
    total.add(wx * dphi * ring.value());
  }
  return total.value();
}

/// Value and error estimate from a base and a doubled resolution.
struct Estimate {
  Complex value;
  double error = 0.0;
};

}  // namespace mellin::numerics
