#pragma once

/**
 * @file koszul.hpp
 * @brief Koszul complex of A_j = tau_j t_j^-1 - 1 on the truncated tail model.
 *
 * On an infinity-type variable A_j is bijective (upward recursion from a_0);
 * on a zero-type variable it is surjective (downward recursion from b_{N+1} = 0)
 * with kernel b_n = tau^(1-n) b_1. Variables are reduced from the highest
 * index down: a zero-type step slices the kernel at n = 1 and continues, the
 * first infinity-type step ends the reduction with an acyclic complex.
 */

#include "mellin/asymptotics/tail_series.hpp"
#include "mellin/errors.hpp"
#include "mellin/ore/operator.hpp"
#include "mellin/ore/twisted_action.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mellin::asymptotics {

namespace detail {

inline void require_kind(const TailSeries& x, int j, TailKind kind, const char* what) {
  if (j < 1 || j > x.arity()) throw IndexOutOfRange(std::string(what) + ": variable out of range");
  if (x.shape().kind(j) != kind)
    throw PreconditionFailed(std::string(what) + ": variable " + std::to_string(j) + " is " +
                             tail_kind_name(x.shape().kind(j)) + "-type");
}

/// Terms of x grouped by the exponents of every variable except j.
inline std::map<std::vector<int>, std::map<int, ShiftPolynomial>> fibres(const TailSeries& x, int j) {
  std::map<std::vector<int>, std::map<int, ShiftPolynomial>> out;
  const auto idx = static_cast<std::size_t>(j - 1);
  for (const auto& [n, b] : x.terms()) {
    std::vector<int> rest = n;
    rest[idx] = 0;
    out[rest].emplace(n[idx], b);
  }
  return out;
}

inline std::vector<int> with_entry(std::vector<int> n, int j, int value) {
  n[static_cast<std::size_t>(j - 1)] = value;
  return n;
}

}  // namespace detail

/// A_j in D~ at the arity of x.
inline OreOperator koszul_operator(int j, int arity) { return ore::koszul_generator(j, arity); }

/// The unique a with A_j a = g on an infinity-type variable:
/// a_0 = -g_0, a_n = tau_j a_{n-1} - g_n (a_n is the coefficient of t_j^-n).
inline TailSeries caseA_solve(const TailSeries& g, int j) {
  detail::require_kind(g, j, TailKind::Infinity, "caseA_solve");
  const int order = g.shape().order(j);
  TailSeries a(g.shape());
  for (const auto& [rest, column] : detail::fibres(g, j)) {
    ShiftPolynomial prev(g.arity());
    for (int n = 0; n <= order; ++n) {
      auto it = column.find(-n);
      const ShiftPolynomial gn = it == column.end() ? ShiftPolynomial(g.arity()) : it->second;
      const ShiftPolynomial an = n == 0 ? -gn : prev.shift(j, 1) - gn;
      a.add(detail::with_entry(rest, j, -n), an);
      prev = an;
    }
  }
  return a;
}

/// One preimage of g under A_j on a zero-type variable:
/// b_{N+1} = 0, b_n = tau_j b_{n+1} - g_n.
inline TailSeries caseB_solve(const TailSeries& g, int j) {
  detail::require_kind(g, j, TailKind::Zero, "caseB_solve");
  const int order = g.shape().order(j);
  TailSeries b(g.shape());
  for (const auto& [rest, column] : detail::fibres(g, j)) {
    ShiftPolynomial next(g.arity());
    for (int n = order; n >= 1; --n) {
      auto it = column.find(n);
      ShiftPolynomial bn = next.shift(j, 1);
      if (it != column.end()) bn -= it->second;
      b.add(detail::with_entry(rest, j, n), bn);
      next = bn;
    }
  }
  return b;
}

/// Kernel representative along j: b_{..,n,..} = tau_j^(1-n) y_{..,0,..}.
/// y has j as a reduced (parameter) variable; the result makes j zero-type.
inline TailSeries kernel_lift(const TailSeries& y, int j, int order) {
  detail::require_kind(y, j, TailKind::Parameter, "kernel_lift");
  TailShape shape = y.shape().with_kind(j, TailKind::Zero);
  shape.orders.at(static_cast<std::size_t>(j - 1)) = order;
  shape.validate();
  TailSeries out(shape);
  for (const auto& [n, b] : y.terms())
    for (int k = 1; k <= order; ++k) out.add(detail::with_entry(n, j, k), b.shift(j, 1 - k));
  return out;
}

/// Coefficients at exponent `at` of variable j, with j turned into a parameter.
inline TailSeries slice(const TailSeries& x, int j, int at = 1) {
  const TailShape shape = x.shape().with_kind(j, TailKind::Parameter);
  TailSeries out(shape);
  for (const auto& [n, b] : x.terms())
    if (n[static_cast<std::size_t>(j - 1)] == at) out.add(detail::with_entry(n, j, 0), b);
  return out;
}

/// Single-variable kernel element k(phi): b_n = tau^(1-n) phi, n = 1..N.
inline TailSeries kernel_element(const ShiftPolynomial& phi, int order, int dmax = 8) {
  TailSeries y(TailShape({TailKind::Parameter}, order, dmax));
  y.add({0}, phi);
  return kernel_lift(y, 1, order);
}

enum class InducedAction { T, Theta };

inline const char* induced_action_name(InducedAction a) { return a == InducedAction::T ? "t" : "th"; }

struct CongruenceResult {
  bool holds = false;
  TailSeries difference;  // action(K(phi)) - K(image of phi)
  TailSeries witness;     // caseB preimage of the difference
};

/**
 * Checks action_j(K) - K' in Image(A_j), where K and K' are kernel
 * representatives. The witness is the case-B preimage; the congruence holds
 * when A_j applied to it reproduces the difference exactly.
 */
inline CongruenceResult check_congruence(const TailSeries& k, const TailSeries& k_image,
                                         InducedAction action, int j) {
  const int p = k.arity();
  const ore::GenKind kind = action == InducedAction::T ? ore::GenKind::T : ore::GenKind::Theta;
  const OreOperator op = OreOperator::generator(ore::Algebra::D, p, {kind, j});
  TailSeries diff = apply_twisted(op, k) - k_image;
  TailSeries witness = caseB_solve(diff, j);
  const bool holds = apply_twisted(koszul_operator(j, p), witness) == diff;
  return {holds, std::move(diff), std::move(witness)};
}

/// Image of phi under the induced action on H^0: tau_j phi or -s_j phi.
inline ShiftPolynomial induced_image(const ShiftPolynomial& phi, InducedAction action, int j) {
  if (action == InducedAction::T) return phi.shift(j, 1);
  return -(ShiftPolynomial::variable(phi.arity(), j) * phi);
}

/// t k(phi) = k(tau phi) and th~ k(phi) = k(-s phi) modulo Image(A), p = 1.
inline CongruenceResult induced_action_congruence(const ShiftPolynomial& phi, InducedAction action,
                                                  int order, int dmax = 8) {
  return check_congruence(kernel_element(phi, order, dmax),
                          kernel_element(induced_image(phi, action, 1), order, dmax), action, 1);
}

enum class Verdict { Acyclic, H0 };

inline const char* verdict_name(Verdict v) { return v == Verdict::Acyclic ? "Acyclic" : "H0"; }

struct Check {
  std::string name;
  bool passed = false;
};

struct ReductionStep {
  int variable = 0;
  char method = 'A';  // 'A' bijective, 'B' surjective with kernel transport
  std::vector<Check> checks;
};

struct InducedCheck {
  int variable = 0;
  InducedAction action = InducedAction::T;
  bool passed = false;
  std::string phi;
  std::string witness;
};

struct KoszulReport {
  std::vector<int> I;
  std::vector<int> J;
  int arity = 1;
  int order = 0;
  Verdict verdict = Verdict::H0;
  Verdict predicted = Verdict::H0;
  std::vector<ReductionStep> steps;
  std::vector<int> extraction;  // exponent read off by H^0 (1 on I, 0 elsewhere)
  std::vector<InducedCheck> induced;

  bool witnesses_pass() const {
    for (const auto& s : steps)
      for (const auto& c : s.checks)
        if (!c.passed) return false;
    for (const auto& c : induced)
      if (!c.passed) return false;
    return true;
  }
  bool passed() const { return verdict == predicted && witnesses_pass(); }
};

struct KoszulOptions {
  int arity = 0;  // 0: largest index in I and J (at least 1)
  int dmax = 8;
  unsigned seed = 20240607u;
  int samples = 3;
};

/// Full kernel representative of phi over every zero-type variable of shape.
inline TailSeries kernel_lift_all(const ShiftPolynomial& phi, const TailShape& shape) {
  TailShape reduced = shape;
  for (auto& k : reduced.kinds)
    if (k == TailKind::Zero) k = TailKind::Parameter;
  TailSeries x(reduced);
  x.add(std::vector<int>(static_cast<std::size_t>(shape.arity()), 0), phi);
  for (int j = 1; j <= shape.arity(); ++j)
    if (shape.kind(j) == TailKind::Zero) x = kernel_lift(x, j, shape.order(j));
  return x;
}

inline KoszulReport koszul_reduce(const std::vector<int>& I, const std::vector<int>& J, int order,
                                  const KoszulOptions& options = {}) {
  KoszulReport report;
  report.I = I;
  report.J = J;
  std::sort(report.I.begin(), report.I.end());
  std::sort(report.J.begin(), report.J.end());
  report.order = order;

  int p = options.arity;
  if (p == 0) {
    p = 1;
    for (int j : I) p = std::max(p, j);
    for (int j : J) p = std::max(p, j);
  }
  report.arity = p;
  const std::set<int> in_i(I.begin(), I.end());
  const std::set<int> in_j(J.begin(), J.end());
  if (in_i.size() != I.size() || in_j.size() != J.size())
    throw PreconditionFailed("repeated index in partition");
  for (int j : in_i) {
    if (j < 1 || j > p) throw IndexOutOfRange("index " + std::to_string(j) + " outside 1.." + std::to_string(p));
    if (in_j.count(j)) throw PreconditionFailed("I and J must be disjoint");
  }
  for (int j : in_j)
    if (j < 1 || j > p) throw IndexOutOfRange("index " + std::to_string(j) + " outside 1.." + std::to_string(p));

  std::vector<TailKind> kinds(static_cast<std::size_t>(p), TailKind::Parameter);
  for (int j : in_i) kinds[static_cast<std::size_t>(j - 1)] = TailKind::Zero;
  for (int j : in_j) kinds[static_cast<std::size_t>(j - 1)] = TailKind::Infinity;
  const TailShape full(kinds, order, options.dmax);
  report.predicted = in_j.empty() ? Verdict::H0 : Verdict::Acyclic;

  std::mt19937 rng(options.seed);
  const int wdeg = std::min(3, options.dmax);
  TailShape shape = full;
  auto active_others = [&](const TailShape& sh, int v) {
    std::vector<int> out;
    for (int k = 1; k <= p; ++k)
      if (k != v && sh.kind(k) != TailKind::Parameter) out.push_back(k);
    return out;
  };

  bool acyclic = false;
  for (int v = p; v >= 1 && !acyclic; --v) {
    if (shape.kind(v) == TailKind::Parameter) continue;
    const OreOperator av = koszul_operator(v, p);
    ReductionStep step;
    step.variable = v;
    bool ok_solve = true, ok_bij = true;
    std::map<int, bool> ok_comm;
    if (shape.kind(v) == TailKind::Infinity) {
      step.method = 'A';
      for (int s = 0; s < options.samples; ++s) {
        const TailSeries g = random_tail(shape, wdeg, rng);
        ok_solve = ok_solve && apply_twisted(av, caseA_solve(g, v)) == g;
        const TailSeries a = random_tail(shape, wdeg, rng);
        ok_bij = ok_bij && caseA_solve(apply_twisted(av, a), v) == a;
        for (int k : active_others(shape, v)) {
          const OreOperator ak = koszul_operator(k, p);
          const TailSeries x = random_tail(shape, wdeg, rng);
          const bool same = apply_twisted(av, apply_twisted(ak, x)) == apply_twisted(ak, apply_twisted(av, x));
          ok_comm.try_emplace(k, true);
          ok_comm[k] = ok_comm[k] && same;
        }
      }
      step.checks.push_back({"solve_exact", ok_solve});
      step.checks.push_back({"bijective", ok_bij});
      for (const auto& [k, ok] : ok_comm) step.checks.push_back({"commutes_with_A_" + std::to_string(k), ok});
      acyclic = true;
    } else {
      step.method = 'B';
      const TailShape reduced = shape.with_kind(v, TailKind::Parameter);
      bool ok_kernel = true, ok_extract = true;
      for (int s = 0; s < options.samples; ++s) {
        const TailSeries g = random_tail(shape, wdeg, rng);
        const TailSeries defect = apply_twisted(av, caseB_solve(g, v)) - g;
        ok_solve = ok_solve && defect.interior(v).is_zero();
        const TailSeries y = random_tail(reduced, wdeg, rng);
        const TailSeries k = kernel_lift(y, v, shape.order(v));
        ok_kernel = ok_kernel && apply_twisted(av, k).interior(v).is_zero();
        ok_extract = ok_extract && slice(k, v) == y;
        for (int other : active_others(reduced, v)) {
          const OreOperator ak = koszul_operator(other, p);
          const bool same = apply_twisted(ak, k) == kernel_lift(apply_twisted(ak, y), v, shape.order(v));
          ok_comm.try_emplace(other, true);
          ok_comm[other] = ok_comm[other] && same;
        }
      }
      step.checks.push_back({"interior_exact", ok_solve});
      step.checks.push_back({"kernel", ok_kernel});
      step.checks.push_back({"extraction", ok_extract});
      for (const auto& [k, ok] : ok_comm) step.checks.push_back({"transports_A_" + std::to_string(k), ok});
      shape = reduced;
    }
    report.steps.push_back(std::move(step));
  }

  if (acyclic) {
    report.verdict = Verdict::Acyclic;
    return report;
  }
  report.verdict = Verdict::H0;
  report.extraction.assign(static_cast<std::size_t>(p), 0);
  for (int j : in_i) report.extraction[static_cast<std::size_t>(j - 1)] = 1;
  for (int j : in_i) {
    for (InducedAction action : {InducedAction::T, InducedAction::Theta}) {
      const ShiftPolynomial phi = random_shift_polynomial(p, wdeg, rng);
      const TailSeries k = kernel_lift_all(phi, full);
      const TailSeries k_image = kernel_lift_all(induced_image(phi, action, j), full);
      const CongruenceResult r = check_congruence(k, k_image, action, j);
      report.induced.push_back({j, action, r.holds, phi.str(), r.witness.str()});
    }
  }
  return report;
}

}  // namespace mellin::asymptotics
