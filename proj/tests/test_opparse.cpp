#include "mellin/opparse/opparse.hpp"
#include "mellin/ore/twisted_action.hpp"
#include "mellin/transform/functor.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mellin;
using namespace mellin::ore;
using opparse::format;
using opparse::parse;

namespace {

OreOperator random_operator(Algebra a, int arity, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> shift(-3, 3);
  std::uniform_int_distribution<int> poly(0, 3);
  std::uniform_int_distribution<int> count(0, 5);
  TermMap terms;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m(arity);
    for (int j = 1; j <= arity; ++j) {
      if (a != Algebra::S) {
        m.at(j, kT) = shift(rng);
        m.at(j, kTheta) = poly(rng);
      }
      if (a != Algebra::D) {
        m.at(j, kTau) = shift(rng);
        m.at(j, kS) = poly(rng);
      }
    }
    terms[m] += Rational(num(rng), den(rng));
  }
  return OreOperator::from_terms(a, arity, terms);
}

opparse::ParseOptions options_for(const OreOperator& p) {
  opparse::ParseOptions opt;
  opt.algebra = p.algebra();
  opt.min_arity = p.arity();
  return opt;
}

struct ErrorFixture {
  const char* text;
  std::size_t offset;
};

}  // namespace

TEST(OpParse, CanonicalExamples) {
  EXPECT_EQ(format(parse("th*t")), "t*th + t");
  EXPECT_EQ(format(parse("th^2*t")), "t*th^2 + 2*t*th + t");
  EXPECT_EQ(format(parse("s*tau")), "tau*s - tau");
  EXPECT_EQ(format(parse("t*th^0 + 0 + th + t")), "2*t + th");
  EXPECT_EQ(format(parse("Dt")), "tinv*th");
  EXPECT_EQ(format(parse("0")), "0");
  EXPECT_EQ(format(parse("-3/4*th")), "-3/4*th");
  EXPECT_EQ(format(parse("th_2 + t_1")), "t_1 + th_2");
}

TEST(OpParse, AlgebraInference) {
  EXPECT_EQ(parse("t + th").algebra(), Algebra::D);
  EXPECT_EQ(parse("s - tau").algebra(), Algebra::S);
  EXPECT_EQ(parse("7").algebra(), Algebra::D);
  EXPECT_THROW(parse("s*t"), MixedAlgebra);
  opparse::ParseOptions dt;
  dt.algebra = Algebra::Dtilde;
  EXPECT_EQ(parse("tau*tinv - 1", dt), koszul_generator(1, 1));
  opparse::ParseOptions d;
  d.algebra = Algebra::D;
  EXPECT_THROW(parse("tau", d), MixedAlgebra);
}

TEST(OpParse, IndexErrors) {
  EXPECT_THROW(parse("t_0"), IndexOutOfRange);
  opparse::ParseOptions opt;
  opt.max_arity = 2;
  EXPECT_THROW(parse("th_3", opt), IndexOutOfRange);
  EXPECT_EQ(parse("th_3").arity(), 3);
}

TEST(OpParse, FormatParseRoundTrip) {
  std::mt19937 rng(8);
  const Algebra algebras[] = {Algebra::D, Algebra::S, Algebra::Dtilde};
  for (int trial = 0; trial < 500; ++trial) {
    const Algebra a = algebras[trial % 3];
    const auto p = random_operator(a, 1 + trial % 3, rng);
    const std::string text = format(p);
    EXPECT_EQ(parse(text, options_for(p)), p) << text;
    EXPECT_EQ(format(parse(text, options_for(p))), text);
  }
}

TEST(OpParse, WhitespaceAndGroupingAreIrrelevant) {
  EXPECT_EQ(parse("  ( th ) * ( t )  "), parse("th*t"));
  EXPECT_EQ(parse("(th + t)^2"), parse("(th + t)*(th + t)"));
  EXPECT_EQ(parse("-(th - t)"), parse("t - th"));
}

TEST(OpParse, SyntaxErrorOffsets) {
  const ErrorFixture fixtures[] = {
      {"", 0},          {"th +", 4},     {"t**th", 2},    {"2*(t + th", 9}, {"t + th)", 6},
      {"t^", 2},        {"t^-1", 2},     {"t^1.5", 3},    {"t^2000", 2},    {"1/0", 2},
      {"foo", 0},       {"t_", 2},       {"th $ t", 3},   {"3/", 2},        {"(", 1},
      {"tau^(2)", 4},   {"t th", 2},     {"t^2^3", 3},    {"+", 1},         {"t_1_2", 3},
      {"th + 2/", 7},   {"th*(t+)", 6},  {"t^1/2", 2},
  };
  for (const auto& f : fixtures) {
    try {
      parse(f.text);
      ADD_FAILURE() << "no error for '" << f.text << "'";
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.offset(), f.offset) << "'" << f.text << "': " << e.what();
    }
  }
}

TEST(OpParse, MellinImagePrints) {
  EXPECT_EQ(format(transform::mellin_op(parse("t*th + t"))), "-tau*s + tau");
  EXPECT_EQ(format(transform::mellin_op(parse("th + 2*t^2"))), "2*tau^2 - s");
}
