#include "mellin/numerics/convolution.hpp"
#include "mellin/numerics/moments.hpp"
#include "mellin/numerics/parameter_expansion.hpp"
#include "mellin/numerics/ray_mellin.hpp"
#include "mellin/numerics/verify.hpp"
#include "mellin/opparse/opparse.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace mellin;
using namespace mellin::numerics;

namespace {

double radial(double r, double a) { return std::pow(r, a) * std::exp(-r - 1.0 / r); }

// K*f for the mode r^a e^{-r-1/r} e^{i m theta}, reduced to a radial integral.
Complex exact_convolution(int m, double a, Complex t) {
  using boost::math::quadrature::gauss_kronrod;
  const double R = std::abs(t);
  auto g = [&](double r) { return radial(r, a) * std::pow(r, -m - 1); };
  if (m <= 0) return -2.0 * std::pow(t, m) * gauss_kronrod<double, 61>::integrate(g, 0.0, R, 15, 1e-14);
  return 2.0 * std::pow(t, m) *
         gauss_kronrod<double, 61>::integrate(g, R, std::numeric_limits<double>::infinity(), 15, 1e-14);
}

}  // namespace

TEST(Moments, AngularModeMatchesBesselK) {
  for (int k = 0; k <= 6; ++k) {
    const auto m = haar_moment(angular_mode(-k, 0.5), k, Side::Infinity);
    EXPECT_NEAR(std::abs(m.value - Complex(-4.0 * boost::math::cyl_bessel_k(k + 0.5, 2.0))), 0.0, 1e-11) << k;
  }
}

TEST(Moments, ZeroSideMatchesBesselK) {
  // c^0_k = (1/pi) int int xi^{-k} f; mode e^{i k theta} survives the angular integral.
  for (int k = 1; k <= 5; ++k) {
    const auto m = haar_moment(angular_mode(k, 0.0), k, Side::Zero);
    EXPECT_NEAR(std::abs(m.value - Complex(4.0 * boost::math::cyl_bessel_k(-k, 2.0))), 0.0, 1e-11) << k;
  }
}

TEST(Moments, OrthogonalModesVanish) {
  const auto m = haar_moment(angular_mode(-2), 3, Side::Infinity);
  EXPECT_LT(std::abs(m.value), 1e-13);
}

TEST(Moments, Linear) {
  const auto f = angular_mode(-1, 0.3);
  const auto g = angular_mode(-2, -0.2);
  const Complex a(0.7, -1.1), b(-2.0, 0.4);
  const auto h = sum(scale(f, a), scale(g, b));
  for (int k = 0; k <= 3; ++k) {
    const Complex lhs = haar_moment(h, k, Side::Infinity).value;
    const Complex rhs = a * haar_moment(f, k, Side::Infinity).value + b * haar_moment(g, k, Side::Infinity).value;
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(Moments, StokesIdentity) {
  for (int k = 0; k <= 8; ++k) {
    const auto r = stokes_identity_check(angular_mode(-2), k);
    EXPECT_TRUE(r.pass) << k << " " << r.max_relative;
  }
}

TEST(Moments, EpsilonCommutation) {
  const auto f = s_factor(mode_ladder({-3, -2, -1, 0, 1, 2, 3}, {1.0, 0.5, Complex(0, 1), 2.0, 1.0, Complex(1, -1), 0.3}),
                          [](Complex s) { return 1.0 + s + 0.5 * s * s; }, "poly");
  const auto r = epsilon_commutation_check(f, Complex(0.7, 0.2), 6);
  EXPECT_TRUE(r.pass) << r.max_relative;
}

TEST(Moments, NonSeparableRejected) {
  auto f = angular_mode(-1);
  f.separable = false;
  EXPECT_THROW(shift_difference(f), NotSeparable);
}

TEST(Convolution, MatchesRadialOracle) {
  for (int m : {-2, 0, 1}) {
    for (double R : {0.1, 1.0, 10.0}) {
      const Complex t = std::polar(R, 0.3);
      const auto e = cauchy_convolve(angular_mode(m), t);
      const Complex exact = exact_convolution(m, 0.0, t);
      EXPECT_NEAR(std::abs(e.value - exact), 0.0, 1e-10 * std::max(1.0, std::abs(exact))) << m << " " << R;
    }
  }
}

TEST(Convolution, RemainderRatios) {
  const auto ladder = mode_ladder({0, -1, -2, -3, -4}, {1.0, 1.0, 1.0, 1.0, 1.0});
  for (int n = 0; n <= 3; ++n) {
    const auto r = asymptotic_remainder_check(ladder, n, {10.0, 20.0, 40.0});
    EXPECT_TRUE(r.pass) << n;
  }
}

TEST(RayMellin, GammaAndBessel) {
  for (double s : {0.5, 1.0, 2.5}) {
    const auto e = ray_mellin(exp_ray(), s);
    EXPECT_NEAR(e.value.real(), boost::math::tgamma(s), 1e-12 * boost::math::tgamma(s));
  }
  // int t^{s-1} e^{-t-1/t} dt = 2 K_s(2)
  const auto b = ray_mellin(bessel_ray(), 0.8);
  EXPECT_NEAR(b.value.real(), 2.0 * boost::math::cyl_bessel_k(0.8, 2.0), 1e-12);
  EXPECT_EQ(ray_mellin(zero_function(), 1.0).value, Complex(0.0));
}

TEST(Verify, CauchyDerivativesOfExponential) {
  const auto d = cauchy_derivatives([](Complex z) { return std::exp(-z); }, 1.5, 4, 0.5);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(std::abs(d[k] - (k % 2 ? -1.0 : 1.0) * std::exp(-1.5)), 0.0, 1e-13);
}

TEST(Verify, StirlingRows) {
  EXPECT_EQ(stirling2_row(4), (std::vector<double>{0, 1, 7, 6, 1}));
  EXPECT_EQ(stirling2_row(0), (std::vector<double>{1}));
}

TEST(Verify, BuiltInCases) {
  const SGrid grid{0.5, 3.0, 6, 0.0};
  EXPECT_TRUE(verify_commutation(opparse::parse("th + t"), exp_ray(), grid).pass);
  EXPECT_TRUE(verify_commutation(opparse::parse("th + 2*t^2"), gaussian_ray(), grid).pass);
  EXPECT_TRUE(verify_commutation(opparse::parse("th + t - tinv"), bessel_ray(), grid, 1e-6).pass);
  EXPECT_TRUE(verify_commutation(opparse::parse("t*th^0 + 0 + th + t"), exp_ray(2.0), grid).pass);
}

TEST(Verify, GuardRejectsNonSolutions) {
  EXPECT_THROW(verify_commutation(opparse::parse("th + t"), gaussian_ray(), SGrid{}), PreconditionFailed);
  EXPECT_FALSE(annihilation_guard(opparse::parse("th + 2*t"), exp_ray()).pass);
}

TEST(Expansion, GeometricCoefficientsAreExact) {
  const auto fn = geometric_family();
  const auto table = parameter_expansion(fn);
  for (std::size_t a = 0; a < table.u.size(); ++a)
    for (std::size_t i = 0; i < table.options.t_grid.size(); ++i)
      EXPECT_NEAR(std::abs(table.u[a][i] - std::exp(-table.options.t_grid[i])), 0.0, 1e-12);
  EXPECT_TRUE(table.bound_holds);
  EXPECT_TRUE(reconstruction_check(fn, table, 0.25).pass);
}

TEST(Expansion, LinearFamilyHasOneCoefficient) {
  const auto table = parameter_expansion(linear_family());
  EXPECT_NEAR(table.norms[1], std::exp(-1.0), 1e-14);
  for (std::size_t a = 0; a < table.norms.size(); ++a) {
    if (a == 1) continue;
    EXPECT_LT(table.norms[a] * std::pow(table.options.R, static_cast<double>(a)), 1e-15);
  }
}

TEST(Expansion, CoefficientAnnihilation) {
  EXPECT_TRUE(coefficient_annihilation_check(power_geometric_family(1.5), ExpansionOptions{}).pass);
  EXPECT_TRUE(coefficient_annihilation_check(power_exp_family(Complex(0.5, 1.0)), ExpansionOptions{}).pass);
  EXPECT_THROW(coefficient_annihilation_check(geometric_family(), ExpansionOptions{}), PreconditionFailed);
}

TEST(Expansion, RadiusValidated) {
  ExpansionOptions opt;
  opt.R = 0.0;
  EXPECT_THROW(parameter_expansion(geometric_family(), opt), PreconditionFailed);
}
