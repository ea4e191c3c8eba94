#pragma once

/**
 * @file ray_mellin.hpp
 * @brief F(s) = int_0^inf f(t) t^{s-1} dt along the positive ray.
 *
 * With t = e^u the integrand becomes f(e^u) e^{us}; unit panels in u are
 * added outward from u = 0 (t = 1) in both directions, which is a geometric
 * subdivision in t, until further panels no longer change the sum.
 */

#include "mellin/errors.hpp"
#include "mellin/numerics/quadrature.hpp"
#include "mellin/numerics/test_function.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

namespace mellin::numerics {

struct RayOptions {
  double tolerance = 1e-12;  // relative, on the accumulated error estimate
  double panel_width = 1.0;  // in log t
  int max_panels = 400;      // per direction
};

inline Estimate ray_mellin(const TestFunction& f, Complex s, const RayOptions& opt = {}) {
  using boost::math::quadrature::gauss_kronrod;
  auto g = [&](double u) -> Complex {
    const Complex v = f(Complex(std::exp(u), 0.0), 0.0) * std::exp(u * s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw QuadratureFailure("ray Mellin integrand is not finite at log t = " + std::to_string(u));
    return v;
  };
  CompensatedSum total;
  double error = 0.0;
  double magnitude = 0.0;
  for (int direction : {1, -1}) {
    int quiet = 0;
    int k = 0;
    for (; k < opt.max_panels && quiet < 2; ++k) {
      const double lo = direction > 0 ? k * opt.panel_width : -(k + 1) * opt.panel_width;
      double err = 0.0;
      double l1 = 0.0;
      const Complex piece =
          gauss_kronrod<double, 31>::integrate(g, lo, lo + opt.panel_width, 8, 1e-14, &err, &l1);
      total.add(piece);
      error += err;
      magnitude += l1;
      quiet = (l1 <= 1e-18 * magnitude) ? quiet + 1 : 0;
    }
    if (quiet < 2)
      throw QuadratureFailure("ray Mellin integral did not converge within " + std::to_string(opt.max_panels) +
                              " panels at s = (" + std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
  }
  Estimate e{total.value(), error};
  if (!(error <= opt.tolerance * std::max(std::abs(e.value), 1e-300) || magnitude == 0.0))
    throw QuadratureFailure("ray Mellin error estimate " + std::to_string(error) + " above tolerance");
  return e;
}

}  // namespace mellin::numerics
