#pragma once

/**
 * @file twisted_action.hpp
 * @brief The twisted action of D on Laurent series with shift-polynomial
 *        coefficients.
 *
 * On a term b(s) t^n:
 *   t_j      : n_j -> n_j + 1
 *   t_j^-1   : n_j -> n_j - 1
 *   th_j     : b -> (n_j - s_j - 1) b           (t_j d/dt_j - s_j - 1)
 * The auxiliary difference symbols of D~ act on coefficients only:
 *   tau_j^k  : b -> b(s + k e_j)
 *   s_j      : b -> s_j b
 * A normal monomial t^a th^b tau^c s^d is applied right to left.
 */

#include "mellin/ore/operator.hpp"
#include "mellin/ore/shift_polynomial.hpp"

#include <map>
#include <vector>

namespace mellin::ore {

/// Finite sum of b_n(s) t^n, n in Z^p. Absent entries are zero.
class LaurentSeries {
 public:
  using Exponent = std::vector<int>;

  explicit LaurentSeries(int arity = 1) : arity_(arity) {
    if (arity < 1) throw IndexOutOfRange("series arity must be positive");
  }

  static LaurentSeries monomial(const ShiftPolynomial& b, Exponent n) {
    LaurentSeries x(static_cast<int>(n.size()));
    x.add(std::move(n), b);
    return x;
  }

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, ShiftPolynomial>& terms() const { return terms_; }

  ShiftPolynomial coefficient(const Exponent& n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? ShiftPolynomial(arity_) : it->second;
  }

  void add(Exponent n, const ShiftPolynomial& b) {
    if (static_cast<int>(n.size()) != arity_) throw IndexOutOfRange("exponent arity mismatch");
    if (b.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(n), b.with_arity(std::max(arity_, b.arity())));
    if (!inserted) {
      it->second += b;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) {
    for (const auto& [n, c] : b.terms_) a.add(n, c);
    return a;
  }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) {
    for (const auto& [n, c] : b.terms_) a.add(n, -c);
    return a;
  }
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  int arity_;
  std::map<Exponent, ShiftPolynomial> terms_;
};

namespace detail {

inline void apply_monomial(const Monomial& m, const Rational& c, const ShiftPolynomial& b,
                           const std::vector<int>& n, int p, LaurentSeries& out) {
  const int coeff_arity = std::max(p, b.arity());
  ShiftPolynomial coeff = c * b.with_arity(coeff_arity);
  for (int j = 1; j <= p; ++j) {
    for (int k = 0; k < m.at(j, kS); ++k) coeff = coeff * ShiftPolynomial::variable(coeff_arity, j);
  }
  for (int j = 1; j <= p; ++j)
    if (m.at(j, kTau) != 0) coeff = coeff.shift(j, m.at(j, kTau));
  for (int j = 1; j <= p; ++j) {
    if (m.at(j, kTheta) == 0) continue;
    // n_j - s_j - 1
    const ShiftPolynomial factor =
        ShiftPolynomial::constant(coeff_arity, Rational(n[static_cast<std::size_t>(j - 1)] - 1)) -
        ShiftPolynomial::variable(coeff_arity, j);
    for (int k = 0; k < m.at(j, kTheta); ++k) coeff = coeff * factor;
  }
  std::vector<int> target = n;
  for (int j = 1; j <= p; ++j) target[static_cast<std::size_t>(j - 1)] += m.at(j, kT);
  out.add(std::move(target), coeff);
}

}  // namespace detail

/**
 * Twisted action of P (in D, or in D~ with the coefficient-side rules above)
 * on a Laurent series. The series arity must cover the operator arity.
 */
inline LaurentSeries apply_twisted(const OreOperator& op, const LaurentSeries& x) {
  if (op.algebra() == Algebra::S)
    throw MixedAlgebra("twisted action needs an operator in D or D~");
  if (op.arity() > x.arity()) throw IndexOutOfRange("operator arity exceeds series arity");
  const int p = x.arity();
  const OreOperator padded = op.with_arity(p);
  LaurentSeries out(p);
  for (const auto& [n, b] : x.terms())
    for (const auto& [m, c] : padded.terms()) detail::apply_monomial(m, c, b, n, p, out);
  return out;
}

/// A_j = tau_j t_j^-1 - 1 as an element of D~.
inline OreOperator koszul_generator(int j, int arity) {
  const OreOperator tau = OreOperator::generator(Algebra::Dtilde, arity, {GenKind::Tau, j});
  const OreOperator tinv = OreOperator::generator(Algebra::Dtilde, arity, {GenKind::Tinv, j});
  return add(multiply(tau, tinv), negate(OreOperator::constant(Algebra::Dtilde, arity, Rational(1))));
}

}  // namespace mellin::ore
