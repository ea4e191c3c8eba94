#pragma once

/**
 * @file verify.hpp
 * @brief Differential operators applied to holomorphic functions, and the
 *        Mellin commutation check: if P f = 0 then M(P) annihilates the ray
 *        Mellin transform of f.
 */

#include "mellin/errors.hpp"
#include "mellin/numerics/quadrature.hpp"
#include "mellin/numerics/ray_mellin.hpp"
#include "mellin/numerics/report.hpp"
#include "mellin/numerics/test_function.hpp"
#include "mellin/opparse/opparse.hpp"
#include "mellin/ore/operator.hpp"
#include "mellin/transform/functor.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mellin::numerics {

/// d^k f(t) for k = 0..K from the Cauchy integral on |z - t| = radius,
/// trapezoid with `nodes` points.
inline std::vector<Complex> cauchy_derivatives(const std::function<Complex(Complex)>& f, Complex t, int K,
                                               double radius, int nodes = 64) {
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(K) + 1);
  for (int j = 0; j < nodes; ++j) {
    const double phi = 2.0 * kPi * j / nodes;
    const Complex fz = f(t + std::polar(radius, phi));
    for (int k = 0; k <= K; ++k) sums[static_cast<std::size_t>(k)].add(fz * std::polar(1.0, -k * phi));
  }
  std::vector<Complex> out(static_cast<std::size_t>(K) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) factorial *= k;
    out[static_cast<std::size_t>(k)] = factorial / (nodes * std::pow(radius, k)) * sums[static_cast<std::size_t>(k)].value();
  }
  return out;
}

/// Stirling numbers of the second kind S(n, k), 0 <= k <= n.
inline std::vector<double> stirling2_row(int n) {
  std::vector<double> row{1.0};
  for (int m = 1; m <= n; ++m) {
    std::vector<double> next(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = 1; k <= m; ++k) {
      const double carry = k <= m - 1 ? k * row[static_cast<std::size_t>(k)] : 0.0;
      next[static_cast<std::size_t>(k)] = carry + row[static_cast<std::size_t>(k - 1)];
    }
    row = std::move(next);
  }
  return row;
}

struct OperatorValue {
  Complex value;
  double scale = 0.0;  // sum over normal monomials of |c t^a (th^b f)(t)|
};

/// (P f)(t) for P in D (arity 1) and holomorphic f, with th^b = sum_k S(b,k) t^k d^k.
inline OperatorValue apply_operator(const ore::OreOperator& p, const TestFunction& f, Complex t,
                                    double radius_factor = 1.0 / 3.0, int nodes = 64) {
  if (p.algebra() != ore::Algebra::D && !p.is_scalar()) throw MixedAlgebra("apply_operator needs P in D");
  if (p.arity() != 1) throw IndexOutOfRange("apply_operator handles one variable");
  int max_theta = 0;
  for (const auto& [m, c] : p.terms()) max_theta = std::max(max_theta, m.at(1, ore::kTheta));
  const auto d = cauchy_derivatives([&f](Complex z) { return f(z, 0.0); }, t, max_theta,
                                    radius_factor * std::abs(t), nodes);
  OperatorValue out{0.0, 0.0};
  for (const auto& [m, c] : p.terms()) {
    const int b = m.at(1, ore::kTheta);
    const auto st = stirling2_row(b);
    Complex theta_f = 0.0;
    for (int k = 0; k <= b; ++k) theta_f += st[static_cast<std::size_t>(k)] * std::pow(t, k) * d[static_cast<std::size_t>(k)];
    const Complex term = to_double(c) * std::pow(t, m.at(1, ore::kT)) * theta_f;
    out.value += term;
    out.scale += std::abs(term);
  }
  return out;
}

/// Pointwise P f on sample points of the positive ray, relative to the
/// monomial scale.
inline ResidualReport annihilation_guard(const ore::OreOperator& p, const TestFunction& f,
                                         const std::vector<double>& points = {0.3, 0.7, 1.0, 1.5, 2.5, 4.0},
                                         double tolerance = 1e-8) {
  ResidualReport report;
  report.check = "guard";
  report.operator_text = opparse::format(p);
  report.function_id = f.id;
  report.tolerance = tolerance;
  for (double x : points) {
    const OperatorValue v = apply_operator(p, f, x);
    const double rel = v.scale == 0.0 ? 0.0 : std::abs(v.value) / v.scale;
    report.add({"t=" + std::to_string(x), x, v.value, 0.0, std::abs(v.value), rel});
  }
  return report;
}

/// Real s values start..stop (count points) shifted by i*offset.
struct SGrid {
  double start = 0.5;
  double stop = 3.0;
  int count = 20;
  double offset = 0.0;

  std::vector<Complex> points() const {
    if (count < 1) throw PreconditionFailed("s-grid needs at least one point");
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) {
      const double x = count == 1 ? start : start + (stop - start) * i / (count - 1);
      out.emplace_back(x, offset);
    }
    return out;
  }
};

/**
 * Guard P f = 0, then evaluate Q = M(P) on F = ray Mellin transform of f.
 * The relative residual at s is |(Q F)(s)| over the largest term of Q F.
 */
inline ResidualReport verify_commutation(const ore::OreOperator& p, const TestFunction& f, const SGrid& grid,
                                         double tolerance = 1e-8, const RayOptions& ray = {}) {
  const ResidualReport guard = annihilation_guard(p, f);
  if (!guard.pass)
    throw PreconditionFailed(opparse::format(p) + " does not annihilate " + f.id +
                             " (relative residual " + std::to_string(guard.max_relative) + ")");
  const ore::OreOperator q = transform::mellin_op(p);
  const transform::ScalarFunction F = [&](Complex s) { return ray_mellin(f, s, ray).value; };
  ResidualReport report;
  report.check = "commutation";
  report.operator_text = opparse::format(q);
  report.function_id = f.id;
  report.tolerance = tolerance;
  for (Complex s : grid.points()) {
    transform::DifferenceEvaluation ev;
    try {
      ev = transform::evaluate_difference(q, [&](std::span<const Complex> x) { return F(x[0]); },
                                          std::span<const Complex>(&s, 1));
    } catch (const EvaluationFailure& e) {
      throw QuadratureFailure(e.what());
    }
    const double rel = ev.max_term == 0.0 ? 0.0 : std::abs(ev.value) / ev.max_term;
    report.add({"s", s, ev.value, 0.0, std::abs(ev.value), rel});
  }
  return report;
}

}  // namespace mellin::numerics
