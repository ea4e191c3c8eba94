#pragma once

/**
 * @file opparse.hpp
 * @brief Text syntax for operators in D, S and D~.
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' nat)?
 *   atom   := generator | rational | '(' expr ')'
 *
 * Generators: t, tinv, th, Dt (= tinv*th), s, tau, tauinv, each with an
 * optional index suffix _j (j >= 1, default 1). '*' is non-commutative and
 * keeps operand order. Rationals are written n or n/d.
 *
 * format() prints the canonical text: terms by decreasing weight, then by
 * decreasing monomial key; factors t, th, tau, s in that order; indices are
 * omitted for arity 1.
 */

#include "mellin/errors.hpp"
#include "mellin/ore/operator.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mellin::opparse {

using ore::Algebra;
using ore::GenKind;
using ore::Generator;
using ore::OreOperator;

/// Abstract syntax tree of an operator expression.
struct OperatorExpr {
  enum class Kind { Generator, Derivative, Number, Sum, Difference, Product, Power, Negate };

  Kind kind = Kind::Number;
  std::size_t offset = 0;
  Generator generator{GenKind::T, 1};  // Generator / Derivative (index only)
  Rational number{0};
  unsigned exponent = 0;
  std::vector<OperatorExpr> children;
};

struct ParseOptions {
  std::optional<Algebra> algebra;  // inferred from generators when absent
  int min_arity = 1;               // result arity is at least this
  std::optional<int> max_arity;    // larger indices raise IndexOutOfRange
};

namespace detail {

enum class Tok { Ident, Number, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok type;
  std::size_t offset;
  std::string text;
  int index = 1;       // identifier suffix
  Rational value{0};  // numbers
  bool integral = true;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, pos_, ""});
        return out;
      }
      const char c = text_[pos_];
      const std::size_t start = pos_;
      switch (c) {
        case '+': out.push_back({Tok::Plus, start, "+"}); ++pos_; continue;
        case '-': out.push_back({Tok::Minus, start, "-"}); ++pos_; continue;
        case '*': out.push_back({Tok::Star, start, "*"}); ++pos_; continue;
        case '^': out.push_back({Tok::Caret, start, "^"}); ++pos_; continue;
        case '(': out.push_back({Tok::LParen, start, "("}); ++pos_; continue;
        case ')': out.push_back({Tok::RParen, start, ")"}); ++pos_; continue;
        default: break;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number());
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(identifier());
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Token number() {
    Token tok{Tok::Number, pos_, ""};
    const std::string num = digits();
    Integer numerator(num);
    Integer denominator(1);
    if (pos_ < text_.size() && text_[pos_] == '/') {
      const std::size_t slash = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw SyntaxError("expected denominator after '/'", pos_);
      const std::string den = digits();
      denominator = Integer(den);
      if (denominator == 0) throw SyntaxError("zero denominator", slash + 1);
      tok.integral = false;
    }
    tok.value = Rational(numerator, denominator);
    tok.text = std::string(text_.substr(tok.offset, pos_ - tok.offset));
    return tok;
  }

  Token identifier() {
    Token tok{Tok::Ident, pos_, ""};
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok.text = std::string(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '_') {
      const std::size_t underscore = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw SyntaxError("expected index digits after '_'", underscore + 1);
      const std::string idx = digits();
      if (idx.size() > 6) throw IndexOutOfRange("generator index too large: " + idx);
      tok.index = std::stoi(idx);
    }
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::optional<GenKind> generator_kind(const std::string& name) {
  if (name == "t") return GenKind::T;
  if (name == "tinv") return GenKind::Tinv;
  if (name == "th") return GenKind::Theta;
  if (name == "s") return GenKind::S;
  if (name == "tau") return GenKind::Tau;
  if (name == "tauinv") return GenKind::TauInv;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  OperatorExpr parse() {
    OperatorExpr e = expr();
    if (peek().type != Tok::End) throw SyntaxError("unexpected token '" + peek().text + "'", peek().offset);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  OperatorExpr expr() {
    OperatorExpr lhs;
    if (peek().type == Tok::Minus || peek().type == Tok::Plus) {
      const Token& sign = next();
      OperatorExpr operand = term();
      if (sign.type == Tok::Minus) {
        lhs.kind = OperatorExpr::Kind::Negate;
        lhs.offset = sign.offset;
        lhs.children.push_back(std::move(operand));
      } else {
        lhs = std::move(operand);
      }
    } else {
      lhs = term();
    }
    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
      const Token& op = next();
      OperatorExpr node;
      node.kind = op.type == Tok::Plus ? OperatorExpr::Kind::Sum : OperatorExpr::Kind::Difference;
      node.offset = op.offset;
      node.children.push_back(std::move(lhs));
      node.children.push_back(term());
      lhs = std::move(node);
    }
    return lhs;
  }

  OperatorExpr term() {
    OperatorExpr lhs = factor();
    while (peek().type == Tok::Star) {
      const Token& op = next();
      OperatorExpr node;
      node.kind = OperatorExpr::Kind::Product;
      node.offset = op.offset;
      node.children.push_back(std::move(lhs));
      node.children.push_back(factor());
      lhs = std::move(node);
    }
    return lhs;
  }

  OperatorExpr factor() {
    OperatorExpr base = atom();
    if (peek().type != Tok::Caret) return base;
    const Token& caret = next();
    const Token& exp = peek();
    if (exp.type != Tok::Number || !exp.integral)
      throw SyntaxError("expected a non-negative integer exponent", exp.offset);
    next();
    if (exp.value > 1024) throw SyntaxError("exponent too large", exp.offset);
    OperatorExpr node;
    node.kind = OperatorExpr::Kind::Power;
    node.offset = caret.offset;
    node.exponent = exp.value.convert_to<unsigned>();
    node.children.push_back(std::move(base));
    return node;
  }

  OperatorExpr atom() {
    const Token& tok = peek();
    switch (tok.type) {
      case Tok::Number: {
        next();
        OperatorExpr n;
        n.kind = OperatorExpr::Kind::Number;
        n.offset = tok.offset;
        n.number = tok.value;
        return n;
      }
      case Tok::Ident: {
        next();
        OperatorExpr g;
        g.offset = tok.offset;
        if (tok.text == "Dt") {
          g.kind = OperatorExpr::Kind::Derivative;
          g.generator = {GenKind::Theta, tok.index};
          return g;
        }
        const auto kind = generator_kind(tok.text);
        if (!kind) throw SyntaxError("unknown generator '" + tok.text + "'", tok.offset);
        g.kind = OperatorExpr::Kind::Generator;
        g.generator = {*kind, tok.index};
        return g;
      }
      case Tok::LParen: {
        next();
        OperatorExpr inner = expr();
        if (peek().type != Tok::RParen) throw SyntaxError("expected ')'", peek().offset);
        next();
        return inner;
      }
      case Tok::End: throw SyntaxError("unexpected end of input", tok.offset);
      default: throw SyntaxError("unexpected token '" + tok.text + "'", tok.offset);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct Leaf {
  std::size_t offset;
  Generator generator;
  bool derivative;
};

inline void collect_leaves(const OperatorExpr& e, std::vector<Leaf>& out) {
  if (e.kind == OperatorExpr::Kind::Generator || e.kind == OperatorExpr::Kind::Derivative)
    out.push_back({e.offset, e.generator, e.kind == OperatorExpr::Kind::Derivative});
  for (const auto& c : e.children) collect_leaves(c, out);
}

inline OreOperator lower(const OperatorExpr& e, Algebra algebra, int arity) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::Number: return OreOperator::constant(algebra, arity, e.number);
    case K::Generator: return OreOperator::generator(algebra, arity, e.generator);
    case K::Derivative:
      return multiply(OreOperator::generator(algebra, arity, {GenKind::Tinv, e.generator.index}),
                      OreOperator::generator(algebra, arity, {GenKind::Theta, e.generator.index}));
    case K::Sum: return add(lower(e.children[0], algebra, arity), lower(e.children[1], algebra, arity));
    case K::Difference:
      return add(lower(e.children[0], algebra, arity), negate(lower(e.children[1], algebra, arity)));
    case K::Product:
      return multiply(lower(e.children[0], algebra, arity), lower(e.children[1], algebra, arity));
    case K::Power: return ore::power(lower(e.children[0], algebra, arity), e.exponent);
    case K::Negate: return negate(lower(e.children[0], algebra, arity));
  }
  return OreOperator(algebra, arity);
}

}  // namespace detail

/// Syntax tree only; generator indices and algebra are not checked.
inline OperatorExpr parse_expr(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).parse();
}

inline OreOperator parse(std::string_view text, const ParseOptions& options = {}) {
  const OperatorExpr tree = parse_expr(text);
  std::vector<detail::Leaf> leaves;
  detail::collect_leaves(tree, leaves);

  int arity = std::max(1, options.min_arity);
  for (const auto& leaf : leaves) {
    if (leaf.generator.index < 1)
      throw IndexOutOfRange("generator index 0 at offset " + std::to_string(leaf.offset));
    if (options.max_arity && leaf.generator.index > *options.max_arity)
      throw IndexOutOfRange("generator index " + std::to_string(leaf.generator.index) +
                            " exceeds arity " + std::to_string(*options.max_arity) + " at offset " +
                            std::to_string(leaf.offset));
    arity = std::max(arity, leaf.generator.index);
  }

  Algebra algebra = Algebra::D;
  if (options.algebra) {
    algebra = *options.algebra;
    for (const auto& leaf : leaves)
      if (!ore::admits(algebra, leaf.generator))
        throw MixedAlgebra(std::string("generator at offset ") + std::to_string(leaf.offset) +
                           " is not in algebra " + ore::algebra_name(algebra));
  } else {
    std::optional<bool> t_side;
    for (const auto& leaf : leaves) {
      const bool side = leaf.generator.t_side();
      if (t_side && *t_side != side)
        throw MixedAlgebra("t-side and s-side generators mixed at offset " +
                           std::to_string(leaf.offset) + " (use the Dtilde hint)");
      t_side = side;
    }
    if (t_side && !*t_side) algebra = Algebra::S;
  }
  return detail::lower(tree, algebra, arity);
}

namespace detail {

inline std::string monomial_text(const ore::Monomial& m, int arity) {
  std::vector<std::string> factors;
  auto name = [arity](const char* base, int j) {
    return arity == 1 ? std::string(base) : std::string(base) + "_" + std::to_string(j);
  };
  auto push = [&](const std::string& sym, int e) {
    if (e == 0) return;
    factors.push_back(e == 1 ? sym : sym + "^" + std::to_string(e));
  };
  for (int j = 1; j <= arity; ++j) {
    const int a = m.at(j, ore::kT);
    push(name(a >= 0 ? "t" : "tinv", j), std::abs(a));
  }
  for (int j = 1; j <= arity; ++j) push(name("th", j), m.at(j, ore::kTheta));
  for (int j = 1; j <= arity; ++j) {
    const int c = m.at(j, ore::kTau);
    push(name(c >= 0 ? "tau" : "tauinv", j), std::abs(c));
  }
  for (int j = 1; j <= arity; ++j) push(name("s", j), m.at(j, ore::kS));
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += factors[i];
  }
  return out;
}

}  // namespace detail

/// Canonical text; parse(format(P)) == P with the algebra hint of P.
inline std::string format(const OreOperator& op) {
  if (op.is_zero()) return "0";
  std::vector<std::pair<const ore::Monomial*, const Rational*>> order;
  for (const auto& [m, c] : op.terms()) order.emplace_back(&m, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    const int wa = a.first->weight();
    const int wb = b.first->weight();
    if (wa != wb) return wa > wb;
    return *b.first < *a.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : order) {
    const bool negative = *c < 0;
    const Rational mag = negative ? Rational(-*c) : *c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    const std::string mono = detail::monomial_text(*m, op.arity());
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

}  // namespace mellin::opparse
