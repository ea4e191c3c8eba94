#pragma once

/**
 * @file operator.hpp
 * @brief Exact operators in the torus-Weyl algebra D, the difference
 *        algebra S and the combined algebra D~.
 *
 *   D  = Q[t, t^-1]<th>       th = t d/dt,   th t = t th + t
 *   S  = Q[s]<tau, tau^-1>    tau s = (s + 1) tau
 *   D~ = both sets of generators; the only non-commuting pairs are
 *        (th_j, t_j) and (tau_j, s_j).
 *
 * Normal form of a monomial: t^a th^b tau^c s^d, every factor a product over
 * the variable indices 1..p. Operators are sparse maps from normal monomials
 * to nonzero rationals, so equality of operators is equality of maps.
 */

#include "mellin/errors.hpp"
#include "mellin/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mellin::ore {

enum class Algebra { D, S, Dtilde };

inline const char* algebra_name(Algebra a) {
  switch (a) {
    case Algebra::D: return "D";
    case Algebra::S: return "S";
    case Algebra::Dtilde: return "Dtilde";
  }
  return "?";
}

enum class GenKind { T, Tinv, Theta, S, Tau, TauInv };

struct Generator {
  GenKind kind;
  int index = 1;  // 1-based variable index

  bool t_side() const {
    return kind == GenKind::T || kind == GenKind::Tinv || kind == GenKind::Theta;
  }
};

inline bool admits(Algebra a, const Generator& g) {
  switch (a) {
    case Algebra::D: return g.t_side();
    case Algebra::S: return !g.t_side();
    case Algebra::Dtilde: return true;
  }
  return false;
}

/// Exponent slots of one variable inside a monomial key.
enum Slot : int { kT = 0, kTheta = 1, kTau = 2, kS = 3 };
inline constexpr int kSlots = 4;

/**
 * Normal monomial t^a th^b tau^c s^d, stored variable-major:
 * e[4*(j-1) + slot]. Padding with zeros extends the arity without changing
 * the relative order of existing keys.
 */
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(int arity) : e(static_cast<std::size_t>(kSlots * arity), 0) {}

  int arity() const { return static_cast<int>(e.size()) / kSlots; }
  int& at(int j, Slot slot) { return e[static_cast<std::size_t>(kSlots * (j - 1) + slot)]; }
  int at(int j, Slot slot) const { return e[static_cast<std::size_t>(kSlots * (j - 1) + slot)]; }

  bool is_unit() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  }

  /// Sum of |exponent| over all slots; drives the canonical print order.
  int weight() const {
    int w = 0;
    for (int x : e) w += std::abs(x);
    return w;
  }

  Monomial padded(int arity) const {
    Monomial m = *this;
    m.e.resize(static_cast<std::size_t>(kSlots * arity), 0);
    return m;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

using TermMap = std::map<Monomial, Rational>;

class OreOperator {
 public:
  OreOperator() : OreOperator(Algebra::D, 1) {}
  OreOperator(Algebra algebra, int arity) : algebra_(algebra), arity_(arity) {
    if (arity < 1) throw IndexOutOfRange("operator arity must be positive");
  }

  static OreOperator constant(Algebra algebra, int arity, const Rational& c) {
    OreOperator op(algebra, arity);
    op.accumulate(Monomial(arity), c);
    return op;
  }

  static OreOperator generator(Algebra algebra, int arity, Generator g) {
    if (!admits(algebra, g))
      throw MixedAlgebra(std::string("generator not in algebra ") + algebra_name(algebra));
    if (g.index < 1 || g.index > arity)
      throw IndexOutOfRange("generator index " + std::to_string(g.index) + " outside 1.." +
                            std::to_string(arity));
    Monomial m(arity);
    switch (g.kind) {
      case GenKind::T: m.at(g.index, kT) = 1; break;
      case GenKind::Tinv: m.at(g.index, kT) = -1; break;
      case GenKind::Theta: m.at(g.index, kTheta) = 1; break;
      case GenKind::Tau: m.at(g.index, kTau) = 1; break;
      case GenKind::TauInv: m.at(g.index, kTau) = -1; break;
      case GenKind::S: m.at(g.index, kS) = 1; break;
    }
    OreOperator op(algebra, arity);
    op.accumulate(std::move(m), Rational(1));
    return op;
  }

  /// Build from a term map; zero coefficients are dropped, keys padded to arity.
  static OreOperator from_terms(Algebra algebra, int arity, const TermMap& terms) {
    OreOperator op(algebra, arity);
    for (const auto& [m, c] : terms) {
      if (m.arity() > arity) throw IndexOutOfRange("monomial wider than operator arity");
      op.accumulate(m.padded(arity), c);
    }
    op.check_support();
    return op;
  }

  Algebra algebra() const { return algebra_; }
  int arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Only a multiple of the unit monomial (including zero).
  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m.padded(arity_));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  OreOperator with_arity(int arity) const {
    if (arity < arity_) throw IndexOutOfRange("cannot shrink operator arity");
    if (arity == arity_) return *this;
    OreOperator op(algebra_, arity);
    for (const auto& [m, c] : terms_) op.terms_.emplace(m.padded(arity), c);
    return op;
  }

  /// Reinterpret in another algebra; fails unless every monomial is admitted.
  OreOperator in_algebra(Algebra target) const {
    if (target == algebra_) return *this;
    OreOperator op(target, arity_);
    op.terms_ = terms_;
    op.check_support();
    return op;
  }

  /// Equal iff same algebra and same term map after padding to a common arity.
  friend bool operator==(const OreOperator& a, const OreOperator& b) {
    if (a.algebra_ != b.algebra_) return false;
    if (a.arity_ == b.arity_) return a.terms_ == b.terms_;
    const int p = std::max(a.arity_, b.arity_);
    return a.with_arity(p).terms_ == b.with_arity(p).terms_;
  }

  void accumulate(Monomial m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void check_support() const {
    for (const auto& [m, c] : terms_) {
      for (int j = 1; j <= arity_; ++j) {
        const bool t_side = m.at(j, kT) != 0 || m.at(j, kTheta) != 0;
        const bool s_side = m.at(j, kTau) != 0 || m.at(j, kS) != 0;
        if ((algebra_ == Algebra::D && s_side) || (algebra_ == Algebra::S && t_side))
          throw MixedAlgebra(std::string("monomial not in algebra ") + algebra_name(algebra_));
      }
    }
  }

  Algebra algebra_;
  int arity_;
  TermMap terms_;
};

namespace detail {

/// Common algebra and arity of two operands. A pure scalar adopts the other side.
inline std::pair<Algebra, int> unify(const OreOperator& p, const OreOperator& q) {
  const int arity = std::max(p.arity(), q.arity());
  if (p.algebra() == q.algebra()) return {p.algebra(), arity};
  if (p.is_scalar()) return {q.algebra(), arity};
  if (q.is_scalar()) return {p.algebra(), arity};
  throw MixedAlgebra(std::string("cannot combine operators of algebras ") +
                     algebra_name(p.algebra()) + " and " + algebra_name(q.algebra()));
}

/// Coefficients of (x + shift)^n * x^m as a map degree -> coefficient.
inline std::vector<std::pair<int, Rational>> shifted_power(int n, int shift, int m) {
  std::vector<std::pair<int, Rational>> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  const Rational sh(shift);
  for (int i = n; i >= 0; --i) {
    Rational c = binomial(n, i) * rational_pow(sh, n - i);
    if (c != 0) out.emplace_back(i + m, std::move(c));
  }
  return out;
}

/**
 * Product of two normal monomials. Per variable:
 *   th^b t^a' = t^a' (th + a')^b        s^d tau^c' = tau^c' (s - c')^d
 * and every other pair commutes.
 */
inline void multiply_monomials(const Monomial& x, const Monomial& y, const Rational& coeff,
                               int arity, OreOperator& out) {
  std::vector<std::pair<Monomial, Rational>> partial;
  Monomial base(arity);
  for (int j = 1; j <= arity; ++j) {
    base.at(j, kT) = x.at(j, kT) + y.at(j, kT);
    base.at(j, kTau) = x.at(j, kTau) + y.at(j, kTau);
  }
  partial.emplace_back(std::move(base), coeff);

  for (int j = 1; j <= arity; ++j) {
    const auto theta_part = shifted_power(x.at(j, kTheta), y.at(j, kT), y.at(j, kTheta));
    const auto s_part = shifted_power(x.at(j, kS), -y.at(j, kTau), y.at(j, kS));
    if (theta_part.size() == 1 && s_part.size() == 1) {
      for (auto& [m, c] : partial) {
        m.at(j, kTheta) = theta_part[0].first;
        m.at(j, kS) = s_part[0].first;
        c *= theta_part[0].second * s_part[0].second;
      }
      continue;
    }
    std::vector<std::pair<Monomial, Rational>> next;
    next.reserve(partial.size() * theta_part.size() * s_part.size());
    for (const auto& [m, c] : partial) {
      for (const auto& [bt, ct] : theta_part) {
        for (const auto& [ds, cs] : s_part) {
          Monomial mm = m;
          mm.at(j, kTheta) = bt;
          mm.at(j, kS) = ds;
          next.emplace_back(std::move(mm), c * ct * cs);
        }
      }
    }
    partial = std::move(next);
  }
  for (auto& [m, c] : partial) out.accumulate(std::move(m), c);
}

}  // namespace detail

inline OreOperator add(const OreOperator& p, const OreOperator& q) {
  const auto [algebra, arity] = detail::unify(p, q);
  OreOperator out(algebra, arity);
  for (const auto& [m, c] : p.terms()) out.accumulate(m.padded(arity), c);
  for (const auto& [m, c] : q.terms()) out.accumulate(m.padded(arity), c);
  return out;
}

inline OreOperator negate(const OreOperator& p) {
  OreOperator out(p.algebra(), p.arity());
  for (const auto& [m, c] : p.terms()) out.accumulate(m, -c);
  return out;
}

inline OreOperator scale(const OreOperator& p, const Rational& k) {
  OreOperator out(p.algebra(), p.arity());
  if (k == 0) return out;
  for (const auto& [m, c] : p.terms()) out.accumulate(m, c * k);
  return out;
}

inline OreOperator multiply(const OreOperator& p, const OreOperator& q) {
  const auto [algebra, arity] = detail::unify(p, q);
  OreOperator out(algebra, arity);
  for (const auto& [mp, cp] : p.terms()) {
    const Monomial x = mp.padded(arity);
    for (const auto& [mq, cq] : q.terms())
      detail::multiply_monomials(x, mq.padded(arity), cp * cq, arity, out);
  }
  return out;
}

inline OreOperator power(const OreOperator& p, unsigned n) {
  OreOperator result = OreOperator::constant(p.algebra(), p.arity(), Rational(1));
  OreOperator base = p;
  while (n > 0) {
    if (n & 1u) result = multiply(result, base);
    n >>= 1u;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

/// Commutator P Q - Q P.
inline OreOperator commutator(const OreOperator& p, const OreOperator& q) {
  return add(multiply(p, q), negate(multiply(q, p)));
}

inline OreOperator operator+(const OreOperator& p, const OreOperator& q) { return add(p, q); }
inline OreOperator operator-(const OreOperator& p) { return negate(p); }
inline OreOperator operator-(const OreOperator& p, const OreOperator& q) {
  return add(p, negate(q));
}
inline OreOperator operator*(const OreOperator& p, const OreOperator& q) {
  return multiply(p, q);
}
inline OreOperator operator*(const Rational& k, const OreOperator& p) { return scale(p, k); }

/// One summand of a raw operator: coefficient times a word of generators.
struct RawTerm {
  Rational coefficient;
  std::vector<Generator> word;
};

/**
 * Normal form of sum_i c_i * w_i. Every generator must belong to `algebra`
 * and carry an index in 1..arity.
 */
inline OreOperator normalize(Algebra algebra, int arity, std::span<const RawTerm> terms) {
  for (const auto& term : terms) {
    bool t_side = false;
    bool s_side = false;
    for (const auto& g : term.word) {
      if (g.index < 1 || g.index > arity)
        throw IndexOutOfRange("generator index " + std::to_string(g.index) + " outside 1.." +
                              std::to_string(arity));
      (g.t_side() ? t_side : s_side) = true;
    }
    if (algebra != Algebra::Dtilde && (t_side && s_side))
      throw MixedAlgebra("word mixes t-side and s-side generators");
    for (const auto& g : term.word)
      if (!admits(algebra, g))
        throw MixedAlgebra(std::string("generator not in algebra ") + algebra_name(algebra));
  }
  OreOperator out(algebra, arity);
  for (const auto& term : terms) {
    OreOperator w = OreOperator::constant(algebra, arity, term.coefficient);
    for (const auto& g : term.word) w = multiply(w, OreOperator::generator(algebra, arity, g));
    out = add(out, w);
  }
  return out;
}

inline OreOperator normalize(Algebra algebra, int arity, std::initializer_list<RawTerm> terms) {
  return normalize(algebra, arity, std::span<const RawTerm>(terms.begin(), terms.size()));
}

/// Convenience generator constructors.
namespace gen {
inline OreOperator t(int j = 1, int p = 1) { return OreOperator::generator(Algebra::D, p, {GenKind::T, j}); }
inline OreOperator tinv(int j = 1, int p = 1) { return OreOperator::generator(Algebra::D, p, {GenKind::Tinv, j}); }
inline OreOperator theta(int j = 1, int p = 1) { return OreOperator::generator(Algebra::D, p, {GenKind::Theta, j}); }
inline OreOperator s(int j = 1, int p = 1) { return OreOperator::generator(Algebra::S, p, {GenKind::S, j}); }
inline OreOperator tau(int j = 1, int p = 1) { return OreOperator::generator(Algebra::S, p, {GenKind::Tau, j}); }
inline OreOperator tauinv(int j = 1, int p = 1) { return OreOperator::generator(Algebra::S, p, {GenKind::TauInv, j}); }
inline OreOperator one(Algebra a = Algebra::D, int p = 1) { return OreOperator::constant(a, p, Rational(1)); }
}  // namespace gen

}  // namespace mellin::ore
