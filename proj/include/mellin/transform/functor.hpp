#pragma once

/**
 * @file functor.hpp
 * @brief Algebraic Mellin transform D -> S and its inverse.
 *
 * The isomorphism is fixed on generators by t_j -> tau_j, th_j -> -s_j. On a
 * normal monomial it reads t^a th^b -> tau^a (-s)^b, which is already in S
 * normal form, so the map is a relabelling of keys with a sign (-1)^|b|.
 *
 * Difference operators act on functions of s by
 *   (tau F)(s) = F(s + 1),   (s F)(s) = s F(s),
 * the convention under which Q = M(P) annihilates F(s) = int_0^inf f t^(s-1) dt
 * whenever P annihilates f (M(t f)(s) = M(f)(s + 1)).
 */

#include "mellin/errors.hpp"
#include "mellin/ore/operator.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mellin::transform {

using ore::Algebra;
using ore::Monomial;
using ore::OreOperator;

namespace detail {

inline OreOperator relabel(const OreOperator& op, Algebra target, ore::Slot from_shift,
                           ore::Slot from_poly, ore::Slot to_shift, ore::Slot to_poly) {
  const int p = op.arity();
  OreOperator out(target, p);
  for (const auto& [m, c] : op.terms()) {
    Monomial image(p);
    int sign_degree = 0;
    for (int j = 1; j <= p; ++j) {
      image.at(j, to_shift) = m.at(j, from_shift);
      image.at(j, to_poly) = m.at(j, from_poly);
      sign_degree += m.at(j, from_poly);
    }
    out.accumulate(std::move(image), sign_degree % 2 == 0 ? c : Rational(-c));
  }
  return out;
}

}  // namespace detail

/// t^a th^b -> tau^a (-s)^b.
inline OreOperator mellin_op(const OreOperator& op) {
  if (op.algebra() != Algebra::D) {
    if (op.is_scalar()) return op.in_algebra(Algebra::S);
    throw MixedAlgebra("mellin_op expects an operator in D");
  }
  return detail::relabel(op, Algebra::S, ore::kT, ore::kTheta, ore::kTau, ore::kS);
}

/// tau^a s^b -> t^a (-th)^b.
inline OreOperator inverse_mellin_op(const OreOperator& op) {
  if (op.algebra() != Algebra::S) {
    if (op.is_scalar()) return op.in_algebra(Algebra::D);
    throw MixedAlgebra("inverse_mellin_op expects an operator in S");
  }
  return detail::relabel(op, Algebra::D, ore::kTau, ore::kS, ore::kT, ore::kTheta);
}

/// Matrix of operators sharing one algebra and arity.
class PresentationMatrix {
 public:
  PresentationMatrix(Algebra algebra, int arity, int rows, int cols)
      : algebra_(algebra), arity_(arity), rows_(rows), cols_(cols),
        entries_(static_cast<std::size_t>(rows * cols), OreOperator(algebra, arity)) {
    if (rows < 0 || cols < 0) throw IndexOutOfRange("negative matrix shape");
  }

  Algebra algebra() const { return algebra_; }
  int arity() const { return arity_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const OreOperator& at(int i, int j) const { return entries_[index(i, j)]; }

  void set(int i, int j, const OreOperator& op) {
    OreOperator entry = op.is_scalar() ? op.in_algebra(algebra_) : op;
    if (entry.algebra() != algebra_) throw MixedAlgebra("matrix entry from another algebra");
    if (entry.arity() > arity_) throw IndexOutOfRange("matrix entry wider than matrix arity");
    entries_[index(i, j)] = entry.with_arity(arity_);
  }

  friend bool operator==(const PresentationMatrix& a, const PresentationMatrix& b) {
    return a.algebra_ == b.algebra_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw IndexOutOfRange("matrix index");
    return static_cast<std::size_t>(i * cols_ + j);
  }

  Algebra algebra_;
  int arity_;
  int rows_;
  int cols_;
  std::vector<OreOperator> entries_;
};

/// Entry-wise mellin_op; shape preserved.
inline PresentationMatrix mellin_presentation(const PresentationMatrix& psi) {
  if (psi.algebra() != Algebra::D) throw MixedAlgebra("mellin_presentation expects a matrix over D");
  PresentationMatrix out(Algebra::S, psi.arity(), psi.rows(), psi.cols());
  for (int i = 0; i < psi.rows(); ++i)
    for (int j = 0; j < psi.cols(); ++j) out.set(i, j, mellin_op(psi.at(i, j)));
  return out;
}

using Complex = std::complex<double>;
using MultiFunction = std::function<Complex(std::span<const Complex>)>;
using ScalarFunction = std::function<Complex(Complex)>;

/// Value and magnitude scale of Q F at one point.
struct DifferenceEvaluation {
  Complex value;
  double max_term = 0.0;  // largest |c (s+a)^b F(s+a)| over the terms of Q
};

/**
 * (Q F)(s) for Q in S acting on a function of s_1..s_p. A normal monomial
 * tau^a s^b multiplies by s^b first and then shifts: (tau^a s^b F)(s) =
 * (s + a)^b F(s + a). Shifted points are evaluated once each.
 */
inline DifferenceEvaluation evaluate_difference(const OreOperator& q, const MultiFunction& f,
                                                std::span<const Complex> s) {
  if (q.algebra() != Algebra::S) {
    if (!q.is_scalar()) throw MixedAlgebra("apply_difference expects an operator in S");
  }
  const int p = q.arity();
  if (static_cast<int>(s.size()) < p) throw IndexOutOfRange("evaluation point has too few coordinates");
  std::map<std::vector<int>, Complex> cache;
  auto value_at = [&](const std::vector<int>& shift) -> Complex {
    auto it = cache.find(shift);
    if (it != cache.end()) return it->second;
    std::vector<Complex> point(s.begin(), s.end());
    for (std::size_t j = 0; j < shift.size(); ++j) point[j] += static_cast<double>(shift[j]);
    Complex v;
    try {
      v = f(point);
    } catch (const std::exception& e) {
      throw EvaluationFailure(std::string("function evaluation failed at a shifted point: ") + e.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw EvaluationFailure("function is not finite at a shifted point");
    cache.emplace(shift, v);
    return v;
  };

  DifferenceEvaluation result{Complex(0.0), 0.0};
  for (const auto& [m, c] : q.terms()) {
    std::vector<int> shift(s.size(), 0);
    Complex factor = to_double(c);
    for (int j = 1; j <= p; ++j) {
      const int a = m.at(j, ore::kTau);
      shift[static_cast<std::size_t>(j - 1)] = a;
      const Complex sj = s[static_cast<std::size_t>(j - 1)] + static_cast<double>(a);
      for (int k = 0; k < m.at(j, ore::kS); ++k) factor *= sj;
    }
    const Complex term = factor * value_at(shift);
    result.value += term;
    result.max_term = std::max(result.max_term, std::abs(term));
  }
  return result;
}

inline Complex apply_difference(const OreOperator& q, const MultiFunction& f,
                                std::span<const Complex> s) {
  return evaluate_difference(q, f, s).value;
}

/// Single-variable form.
inline Complex apply_difference(const OreOperator& q, const ScalarFunction& f, Complex s) {
  if (q.arity() != 1) throw IndexOutOfRange("scalar apply_difference needs arity 1");
  MultiFunction g = [&f](std::span<const Complex> x) { return f(x[0]); };
  return evaluate_difference(q, g, std::span<const Complex>(&s, 1)).value;
}

}  // namespace mellin::transform
