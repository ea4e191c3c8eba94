#pragma once

/**
 * @file tail_series.hpp
 * @brief Truncated one-sided series per variable with shift-polynomial
 *        coefficients, the finite model of the asymptotic-expansion quotients.
 *
 * Exponents are stored as actual powers of t_j:
 *   Zero      n in [1, N]    positive-power tails; t^0 and below are killed
 *   Infinity  n in [-N, 0]   series in 1/t_j; positive powers are killed
 *   Parameter n = 0          variable already reduced away
 */

#include "mellin/errors.hpp"
#include "mellin/ore/operator.hpp"
#include "mellin/ore/shift_polynomial.hpp"
#include "mellin/ore/twisted_action.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace mellin::asymptotics {

using ore::LaurentSeries;
using ore::OreOperator;
using ore::ShiftPolynomial;

enum class TailKind { Zero, Infinity, Parameter };

inline const char* tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::Zero: return "zero";
    case TailKind::Infinity: return "infinity";
    case TailKind::Parameter: return "parameter";
  }
  return "?";
}

/// What happens to terms pushed past the truncation order.
enum class OverflowPolicy { Truncate, Strict };

struct TailShape {
  std::vector<TailKind> kinds;
  std::vector<int> orders;
  int dmax = 8;
  OverflowPolicy policy = OverflowPolicy::Truncate;

  TailShape() = default;
  TailShape(std::vector<TailKind> k, int order, int degree_bound = 8)
      : kinds(std::move(k)), orders(kinds.size(), order), dmax(degree_bound) {
    validate();
  }

  void validate() const {
    if (kinds.empty()) throw IndexOutOfRange("tail shape needs at least one variable");
    if (orders.size() != kinds.size()) throw IndexOutOfRange("one truncation order per variable");
    for (int n : orders)
      if (n < 2) throw TruncationOverflow("truncation order must be at least 2");
    if (dmax < 0) throw TruncationOverflow("degree bound must be non-negative");
  }

  int arity() const { return static_cast<int>(kinds.size()); }
  TailKind kind(int j) const { return kinds.at(static_cast<std::size_t>(j - 1)); }
  int order(int j) const { return orders.at(static_cast<std::size_t>(j - 1)); }

  int lo(int j) const {
    switch (kind(j)) {
      case TailKind::Zero: return 1;
      case TailKind::Infinity: return -order(j);
      case TailKind::Parameter: return 0;
    }
    return 0;
  }
  int hi(int j) const { return kind(j) == TailKind::Zero ? order(j) : 0; }

  /// Exponent of variable j at the truncation boundary (the defect zone).
  int top(int j) const { return kind(j) == TailKind::Zero ? order(j) : lo(j); }

  bool contains(const std::vector<int>& n) const {
    for (int j = 1; j <= arity(); ++j) {
      const int e = n[static_cast<std::size_t>(j - 1)];
      if (e < lo(j) || e > hi(j)) return false;
    }
    return true;
  }

  TailShape with_kind(int j, TailKind k) const {
    TailShape out = *this;
    out.kinds.at(static_cast<std::size_t>(j - 1)) = k;
    return out;
  }

  friend bool operator==(const TailShape&, const TailShape&) = default;
};

class TailSeries {
 public:
  using Exponent = std::vector<int>;

  explicit TailSeries(TailShape shape) : shape_(std::move(shape)) { shape_.validate(); }

  const TailShape& shape() const { return shape_; }
  int arity() const { return shape_.arity(); }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, ShiftPolynomial>& terms() const { return terms_; }

  ShiftPolynomial coefficient(const Exponent& n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? ShiftPolynomial(arity()) : it->second;
  }

  /// Adds b t^n; n must lie in the window.
  void add(const Exponent& n, const ShiftPolynomial& b) {
    if (static_cast<int>(n.size()) != arity()) throw IndexOutOfRange("exponent arity mismatch");
    if (!shape_.contains(n)) throw TruncationOverflow("exponent outside the truncation window");
    if (b.is_zero()) return;
    if (b.arity() > arity()) throw IndexOutOfRange("coefficient uses too many s variables");
    auto [it, inserted] = terms_.try_emplace(n, b.with_arity(arity()));
    if (!inserted) it->second += b;
    if (it->second.is_zero()) {
      terms_.erase(it);
      return;
    }
    if (it->second.degree() > shape_.dmax)
      throw TruncationOverflow("coefficient degree " + std::to_string(it->second.degree()) +
                               " exceeds bound " + std::to_string(shape_.dmax));
  }

  void set(const Exponent& n, const ShiftPolynomial& b) {
    terms_.erase(n);
    add(n, b);
  }

  LaurentSeries laurent() const {
    LaurentSeries out(arity());
    for (const auto& [n, b] : terms_) out.add(n, b);
    return out;
  }

  /// Reads a Laurent series into the window: killed terms vanish, terms past
  /// the truncation order are dropped or rejected per policy.
  static TailSeries project(const TailShape& shape, const LaurentSeries& x) {
    TailSeries out(shape);
    for (const auto& [n, b] : x.terms()) {
      bool keep = true;
      for (int j = 1; j <= shape.arity() && keep; ++j) {
        const int e = n[static_cast<std::size_t>(j - 1)];
        switch (shape.kind(j)) {
          case TailKind::Zero:
            if (e <= 0) keep = false;
            else if (e > shape.order(j)) keep = overflow(shape, j);
            break;
          case TailKind::Infinity:
            if (e > 0) keep = false;
            else if (e < -shape.order(j)) keep = overflow(shape, j);
            break;
          case TailKind::Parameter:
            if (e != 0)
              throw IndexOutOfRange("operator moves the exponent of reduced variable " +
                                    std::to_string(j));
            break;
        }
      }
      if (keep) out.add(n, b);
    }
    return out;
  }

  /// Copy without the terms whose exponent in variable j is at the boundary.
  TailSeries interior(int j) const {
    TailSeries out(shape_);
    const int top = shape_.top(j);
    for (const auto& [n, b] : terms_)
      if (n[static_cast<std::size_t>(j - 1)] != top) out.terms_.emplace(n, b);
    return out;
  }

  /// Interior with respect to every zero-type variable.
  TailSeries interior() const {
    TailSeries out = *this;
    for (int j = 1; j <= arity(); ++j)
      if (shape_.kind(j) == TailKind::Zero) out = out.interior(j);
    return out;
  }

  friend TailSeries operator+(TailSeries a, const TailSeries& b) {
    check_same(a, b);
    for (const auto& [n, c] : b.terms_) a.add(n, c);
    return a;
  }
  friend TailSeries operator-(TailSeries a, const TailSeries& b) {
    check_same(a, b);
    for (const auto& [n, c] : b.terms_) a.add(n, -c);
    return a;
  }
  friend bool operator==(const TailSeries& a, const TailSeries& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [n, b] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + b.str() + ")";
      for (int j = 1; j <= arity(); ++j) {
        const int e = n[static_cast<std::size_t>(j - 1)];
        if (e == 0) continue;
        out += "*t";
        if (arity() > 1) out += "_" + std::to_string(j);
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  static bool overflow(const TailShape& shape, int j) {
    if (shape.policy == OverflowPolicy::Strict)
      throw TruncationOverflow("term leaves the window of variable " + std::to_string(j));
    return false;
  }

  static void check_same(const TailSeries& a, const TailSeries& b) {
    if (!(a.shape_ == b.shape_)) throw IndexOutOfRange("tail series shapes differ");
  }

  TailShape shape_;
  std::map<Exponent, ShiftPolynomial> terms_;
};

/// Twisted action of P followed by projection onto the window of x.
inline TailSeries apply_twisted(const OreOperator& op, const TailSeries& x) {
  return TailSeries::project(x.shape(), ore::apply_twisted(op, x.laurent()));
}

/// Random polynomial in s_1..s_p of total degree at most `degree`.
inline ShiftPolynomial random_shift_polynomial(int arity, int degree, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> var(1, arity);
  ShiftPolynomial out(arity);
  for (int d = 0; d <= degree; ++d) {
    ShiftPolynomial mono = ShiftPolynomial::constant(arity, Rational(coeff(rng), 1 + (d % 3)));
    for (int k = 0; k < d; ++k) mono = mono * ShiftPolynomial::variable(arity, var(rng));
    out += mono;
  }
  return out;
}

/// Random element of the window; each exponent is filled with probability 1/2.
inline TailSeries random_tail(const TailShape& shape, int degree, std::mt19937& rng) {
  TailSeries out(shape);
  std::bernoulli_distribution fill(0.5);
  std::vector<int> n(static_cast<std::size_t>(shape.arity()));
  for (int j = 1; j <= shape.arity(); ++j) n[static_cast<std::size_t>(j - 1)] = shape.lo(j);
  for (;;) {
    if (fill(rng)) out.add(n, random_shift_polynomial(shape.arity(), degree, rng));
    int j = 1;
    for (; j <= shape.arity(); ++j) {
      auto& e = n[static_cast<std::size_t>(j - 1)];
      if (e < shape.hi(j)) {
        ++e;
        break;
      }
      e = shape.lo(j);
    }
    if (j > shape.arity()) return out;
  }
}

}  // namespace mellin::asymptotics
