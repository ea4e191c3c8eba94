#pragma once

/**
 * @file moments.hpp
 * @brief Haar-measure moments on C* and the identities they satisfy.
 *
 * With dxi/xi ^ dxibar/xibar = -2i dr dtheta / r and u = log r,
 *   c^inf_k = (1/2i pi) int xi^k f dmu   = -(1/pi) int int xi^k f dtheta du,  k >= 0
 *   c^0_k   = (-1/2i pi) int xi^-k f dmu = (1/pi) int int xi^-k f dtheta du,  k >= 1
 * so that K*f ~ sum c^inf_k t^-k at infinity and ~ sum c^0_k t^k at 0.
 */

#include "mellin/errors.hpp"
#include "mellin/numerics/quadrature.hpp"
#include "mellin/numerics/report.hpp"
#include "mellin/numerics/test_function.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mellin::numerics {

struct QuadOptions {
  double tolerance = 1e-10;  // on the refinement difference, relative to max(1, |value|)
  int panels = 40;           // Gauss panels in log r
  int angles = 96;           // trapezoid nodes in theta
};

enum class Side { Zero, Infinity };

inline const char* side_name(Side s) { return s == Side::Zero ? "zero" : "infinity"; }

namespace detail {

/// int int G(e^{u + i theta}) dtheta du over the certificate annulus, several
/// weights at once; also accumulates int int |G_k| for scale estimates.
template <class G>
std::vector<Complex> log_polar(G&& g, std::size_t count, const DecayCertificate& decay, int panels,
                               int angles, std::vector<double>* l1 = nullptr) {
  std::vector<CompensatedSum> sums(count);
  std::vector<double> abs_sums(count, 0.0);
  std::vector<Complex> values(count);
  const auto nodes = gauss_panels(std::log(decay.r_min), std::log(decay.r_max), panels);
  const double dphi = 2.0 * kPi / angles;
  for (const auto& [u, wu] : nodes) {
    for (int k = 0; k < angles; ++k) {
      const Complex xi = std::polar(std::exp(u), k * dphi);
      g(xi, values);
      for (std::size_t i = 0; i < count; ++i) {
        sums[i].add(wu * dphi * values[i]);
        abs_sums[i] += wu * dphi * std::abs(values[i]);
      }
    }
  }
  if (l1) *l1 = abs_sums;
  std::vector<Complex> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = sums[i].value();
  return out;
}

/// Runs log_polar at base and doubled resolution; returns the finer values
/// and fills per-entry error estimates.
template <class G>
std::vector<Complex> refined(G&& g, std::size_t count, const DecayCertificate& decay,
                             const QuadOptions& opt, std::vector<double>& error,
                             std::vector<double>* l1 = nullptr) {
  const auto coarse = log_polar(g, count, decay, opt.panels, opt.angles);
  auto fine = log_polar(g, count, decay, 2 * opt.panels, 2 * opt.angles, l1);
  error.assign(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) error[i] = std::abs(fine[i] - coarse[i]);
  return fine;
}

inline void check_error(double error, Complex value, double tolerance, const std::string& what) {
  if (!(error <= tolerance * std::max(1.0, std::abs(value))))
    throw QuadratureFailure(what + ": error estimate " + std::to_string(error) + " above tolerance");
}

inline void require_plane(const TestFunction& f, const char* what) {
  if (f.domain != Domain::Plane)
    throw PreconditionFailed(std::string(what) + " needs a function decaying on all of C*, got " + f.id);
}

}  // namespace detail

struct MomentValue {
  Complex value;
  double error = 0.0;
};

inline MomentValue haar_moment(const TestFunction& f, int k, Side side, Complex s = 0.0,
                               const QuadOptions& opt = {}) {
  detail::require_plane(f, "haar_moment");
  if (side == Side::Zero && k < 1) throw IndexOutOfRange("zero-side moments start at k = 1");
  if (side == Side::Infinity && k < 0) throw IndexOutOfRange("infinity-side moments start at k = 0");
  const int power = side == Side::Infinity ? k : -k;
  std::vector<double> error;
  const auto v = detail::refined(
      [&](Complex xi, std::vector<Complex>& out) { out[0] = std::pow(xi, power) * f(xi, s); }, 1, f.decay,
      opt, error);
  const double sign = side == Side::Infinity ? -1.0 : 1.0;
  MomentValue m{sign / kPi * v[0], error[0] / kPi};
  detail::check_error(m.error, m.value, opt.tolerance, "haar_moment");
  return m;
}

/// c^inf_k for k = 0..K and c^0_k for k = 1..K (zero[0] unused), one grid pass.
struct MomentTable {
  int k_max = 0;
  Complex s;
  std::vector<Complex> infinity;
  std::vector<Complex> zero;
  std::vector<double> error_infinity;
  std::vector<double> error_zero;

  double norm() const {
    double n = 0.0;
    for (auto c : infinity) n = std::max(n, std::abs(c));
    for (auto c : zero) n = std::max(n, std::abs(c));
    return n;
  }
};

inline MomentTable moment_table(const TestFunction& f, int k_max, Complex s = 0.0,
                                const QuadOptions& opt = {}) {
  detail::require_plane(f, "moment_table");
  if (k_max < 0) throw IndexOutOfRange("k_max must be non-negative");
  const std::size_t n = static_cast<std::size_t>(k_max) + 1;
  std::vector<double> error;
  const auto v = detail::refined(
      [&](Complex xi, std::vector<Complex>& out) {
        const Complex fx = f(xi, s);
        const Complex inv = 1.0 / xi;
        Complex up = fx;
        Complex down = fx * inv;
        out[0] = up;
        for (std::size_t k = 1; k < n; ++k) {
          up *= xi;
          out[k] = up;
          out[n + k] = down;
          down *= inv;
        }
        out[n] = 0.0;
      },
      2 * n, f.decay, opt, error);
  MomentTable t;
  t.k_max = k_max;
  t.s = s;
  t.infinity.resize(n);
  t.zero.resize(n);
  t.error_infinity.resize(n);
  t.error_zero.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    t.infinity[k] = -v[k] / kPi;
    t.error_infinity[k] = error[k] / kPi;
    t.zero[k] = v[n + k] / kPi;
    t.error_zero[k] = error[n + k] / kPi;
    detail::check_error(t.error_infinity[k], t.infinity[k], opt.tolerance, "moment_table");
    detail::check_error(t.error_zero[k], t.zero[k], opt.tolerance, "moment_table");
  }
  return t;
}

/**
 * (1/2i pi) int xi^{k+1} df/dxi dmu  versus  -k (1/2i pi) int xi^k f dmu.
 * Relative residuals are taken against max(|lhs|, |rhs|), floored at 1e-3 of
 * the L1 size of the integrands so that structurally vanishing pairs are
 * judged against the integrand scale.
 */
inline ResidualReport stokes_identity_check(const TestFunction& f, int k, Complex s = 0.0,
                                            const QuadOptions& opt = {}, double tolerance = 1e-6) {
  detail::require_plane(f, "stokes_identity_check");
  if (k < 0) throw IndexOutOfRange("Stokes identity needs k >= 0");
  std::vector<double> error;
  std::vector<double> l1;
  const auto v = detail::refined(
      [&](Complex xi, std::vector<Complex>& out) {
        const Complex xk = std::pow(xi, k);
        out[0] = xk * xi * f.d_xi(xi, s);
        out[1] = xk * f(xi, s);
      },
      2, f.decay, opt, error, &l1);
  const Complex lhs = -v[0] / kPi;
  const Complex rhs = -static_cast<double>(k) * (-v[1] / kPi);
  detail::check_error(error[0] / kPi, lhs, opt.tolerance, "stokes_identity_check");
  detail::check_error(error[1] / kPi, rhs, opt.tolerance, "stokes_identity_check");
  ResidualReport report;
  report.check = "stokes";
  report.function_id = f.id;
  report.tolerance = tolerance;
  const double floor = 1e-3 * (l1[0] + k * l1[1]) / kPi;
  report.add({"k=" + std::to_string(k), s, lhs, rhs, std::abs(lhs - rhs), relative_difference(lhs, rhs, floor)});
  return report;
}

/// (xi d/dxi - s - 1) f
inline TestFunction twisted_euler(const TestFunction& f) {
  TestFunction g = f;
  g.id = "th~(" + f.id + ")";
  g.value = [f](Complex t, Complex s) { return f.euler(t, s) - (s + 1.0) * f(t, s); };
  g.d_xi = nullptr;
  g.d_xibar = nullptr;
  return g;
}

/// f(t, s + 1) / t - f(t, s)
inline TestFunction shift_difference(const TestFunction& f) {
  if (!f.separable) throw NotSeparable("s-shift of " + f.id + " cannot be evaluated");
  TestFunction g = f;
  g.id = "(tau t^-1 - 1)(" + f.id + ")";
  g.value = [f](Complex t, Complex s) { return f(t, s + 1.0) / t - f(t, s); };
  g.d_xi = nullptr;
  g.d_xibar = nullptr;
  return g;
}

/**
 * Moment transport under th~ = xi d/dxi - s - 1 and tau t^-1 - 1.
 *   th~:   c^inf_k -> (-k - s - 1) c^inf_k,   c^0_k -> (k - s - 1) c^0_k
 *   tau:   c^inf_k -> tau c^inf_{k-1} - c^inf_k (k >= 1),
 *          c^0_k   -> tau c^0_{k+1} - c^0_k
 * At k = 0 on the infinity side the kernel picks up the constant
 * (1/2i pi) int xi^-1 tau f dmu = -tau c^0_1, so the expansions agree modulo
 * constants; that coefficient is checked separately as
 *   c^inf_0(h) = -tau c^0_1(f) - c^inf_0(f).
 * Residuals are relative, floored at 1e-3 of the moment-table norm.
 */
inline ResidualReport epsilon_commutation_check(const TestFunction& f, Complex s, int k_max,
                                                const QuadOptions& opt = {}, double tolerance = 1e-6) {
  const MomentTable base = moment_table(f, k_max + 1, s, opt);
  const MomentTable shifted = moment_table(f, k_max + 1, s + 1.0, opt);
  const MomentTable theta = moment_table(twisted_euler(f), k_max, s, opt);
  const MomentTable tau = moment_table(shift_difference(f), k_max, s, opt);
  const double floor =
      1e-3 * std::max({base.norm(), shifted.norm(), theta.norm(), tau.norm()});

  ResidualReport report;
  report.check = "epsilon_commutation";
  report.function_id = f.id;
  report.tolerance = tolerance;
  auto add = [&](std::string label, Complex lhs, Complex rhs) {
    report.add({std::move(label), s, lhs, rhs, std::abs(lhs - rhs), relative_difference(lhs, rhs, floor)});
  };
  for (int k = 0; k <= k_max; ++k) {
    const auto i = static_cast<std::size_t>(k);
    add("theta:infinity:" + std::to_string(k), theta.infinity[i], (-double(k) - s - 1.0) * base.infinity[i]);
    if (k >= 1) {
      add("theta:zero:" + std::to_string(k), theta.zero[i], (double(k) - s - 1.0) * base.zero[i]);
      add("tau:infinity:" + std::to_string(k), tau.infinity[i], shifted.infinity[i - 1] - base.infinity[i]);
      add("tau:zero:" + std::to_string(k), tau.zero[i], shifted.zero[i + 1] - base.zero[i]);
    } else {
      add("tau:infinity:0:constant", tau.infinity[0], -shifted.zero[1] - base.infinity[0]);
    }
  }
  return report;
}

}  // namespace mellin::numerics
