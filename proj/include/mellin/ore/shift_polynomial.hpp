#pragma once

#include "mellin/errors.hpp"
#include "mellin/rational.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace mellin::ore {

/**
 * Polynomial in s_1..s_p with exact coefficients, acted on by the invertible
 * shifts tau_j : s_j -> s_j + 1. Stands in for analytic coefficient
 * functions of s; the shift is a ring automorphism.
 */
class ShiftPolynomial {
 public:
  using Exponent = std::vector<int>;

  explicit ShiftPolynomial(int arity = 1) : arity_(arity) {
    if (arity < 1) throw IndexOutOfRange("shift polynomial arity must be positive");
  }

  static ShiftPolynomial constant(int arity, const Rational& c) {
    ShiftPolynomial f(arity);
    f.accumulate(Exponent(static_cast<std::size_t>(arity), 0), c);
    return f;
  }

  /// s_j
  static ShiftPolynomial variable(int arity, int j) {
    check_index(arity, j);
    ShiftPolynomial f(arity);
    Exponent e(static_cast<std::size_t>(arity), 0);
    e[static_cast<std::size_t>(j - 1)] = 1;
    f.accumulate(std::move(e), Rational(1));
    return f;
  }

  /// c_0 + c_1 s + c_2 s^2 + ... in a single variable.
  static ShiftPolynomial univariate(std::span<const Rational> dense) {
    ShiftPolynomial f(1);
    for (std::size_t i = 0; i < dense.size(); ++i) f.accumulate({static_cast<int>(i)}, dense[i]);
    return f;
  }
  static ShiftPolynomial univariate(std::initializer_list<Rational> dense) {
    return univariate(std::span<const Rational>(dense.begin(), dense.size()));
  }

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
  }

  /// Dense coefficient list of a univariate polynomial.
  std::vector<Rational> dense() const {
    if (arity_ != 1) throw IndexOutOfRange("dense() requires a univariate polynomial");
    std::vector<Rational> out(static_cast<std::size_t>(std::max(degree() + 1, 0)));
    for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(e[0])] = c;
    return out;
  }

  ShiftPolynomial with_arity(int arity) const {
    if (arity < arity_) throw IndexOutOfRange("cannot shrink shift polynomial arity");
    if (arity == arity_) return *this;
    ShiftPolynomial f(arity);
    for (const auto& [e, c] : terms_) {
      Exponent padded = e;
      padded.resize(static_cast<std::size_t>(arity), 0);
      f.terms_.emplace(std::move(padded), c);
    }
    return f;
  }

  /// (tau_j^k f)(s) = f(s + k e_j).
  ShiftPolynomial shift(int j, int k = 1) const {
    check_index(arity_, j);
    if (k == 0) return *this;
    ShiftPolynomial out(arity_);
    const auto idx = static_cast<std::size_t>(j - 1);
    const Rational step(k);
    for (const auto& [e, c] : terms_) {
      const int n = e[idx];
      Rational pw(1);
      // (s_j + k)^n = sum_i C(n, i) k^(n-i) s_j^i, walking i downward.
      for (int i = n; i >= 0; --i) {
        Exponent ee = e;
        ee[idx] = i;
        out.accumulate(std::move(ee), c * binomial(n, i) * pw);
        pw *= step;
      }
    }
    return out;
  }

  /// Shift by a full multi-index.
  ShiftPolynomial shift(std::span<const int> ks) const {
    ShiftPolynomial out = *this;
    for (std::size_t j = 0; j < ks.size(); ++j)
      if (ks[j] != 0) out = out.shift(static_cast<int>(j) + 1, ks[j]);
    return out;
  }

  Complex evaluate(std::span<const Complex> s) const {
    if (static_cast<int>(s.size()) < arity_) throw IndexOutOfRange("too few evaluation points");
    Complex acc = 0;
    for (const auto& [e, c] : terms_) {
      Complex term = to_double(c);
      for (std::size_t j = 0; j < e.size(); ++j)
        for (int k = 0; k < e[j]; ++k) term *= s[j];
      acc += term;
    }
    return acc;
  }

  Complex evaluate(Complex s) const { return evaluate(std::span<const Complex>(&s, 1)); }

  friend ShiftPolynomial operator+(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    const int p = std::max(a.arity_, b.arity_);
    ShiftPolynomial out = a.with_arity(p);
    for (const auto& [e, c] : b.with_arity(p).terms_) out.accumulate(e, c);
    return out;
  }

  friend ShiftPolynomial operator-(const ShiftPolynomial& a) {
    ShiftPolynomial out(a.arity_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend ShiftPolynomial operator-(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    return a + (-b);
  }

  friend ShiftPolynomial operator*(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    const int p = std::max(a.arity_, b.arity_);
    const ShiftPolynomial x = a.with_arity(p);
    const ShiftPolynomial y = b.with_arity(p);
    ShiftPolynomial out(p);
    for (const auto& [ex, cx] : x.terms_) {
      for (const auto& [ey, cy] : y.terms_) {
        Exponent e(ex.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
        out.accumulate(std::move(e), cx * cy);
      }
    }
    return out;
  }

  friend ShiftPolynomial operator*(const Rational& k, const ShiftPolynomial& a) {
    ShiftPolynomial out(a.arity_);
    if (k == 0) return out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, k * c);
    return out;
  }

  ShiftPolynomial& operator+=(const ShiftPolynomial& b) { return *this = *this + b; }
  ShiftPolynomial& operator-=(const ShiftPolynomial& b) { return *this = *this - b; }

  friend bool operator==(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    if (a.arity_ == b.arity_) return a.terms_ == b.terms_;
    const int p = std::max(a.arity_, b.arity_);
    return a.with_arity(p).terms_ == b.with_arity(p).terms_;
  }

  /// "s^2 - 2*s + 1"; variables print as s (p = 1) or s_j.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += arity_ == 1 ? std::string("s") : "s_" + std::to_string(j + 1);
        if (e[j] > 1) mono += "^" + std::to_string(e[j]);
      }
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (mono.empty()) {
        os << to_string(mag);
      } else {
        if (mag != 1) os << to_string(mag) << "*";
        os << mono;
      }
      first = false;
    }
    return os.str();
  }

 private:
  static void check_index(int arity, int j) {
    if (j < 1 || j > arity)
      throw IndexOutOfRange("shift index " + std::to_string(j) + " outside 1.." +
                            std::to_string(arity));
  }

  void accumulate(Exponent e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int arity_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace mellin::ore
