#include "mdl/linalg.hpp"
#include "mdl/rational.hpp"
#include "mdl/scenario.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace mdl;

namespace {

RationalVector random_simplex_point(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> pick(0, 9);
  RationalVector v(n);
  Rational total = 0;
  for (auto& e : v) {
    e = pick(rng);
    total += e;
  }
  if (total == 0) {
    v[0] = 1;
    total = 1;
  }
  for (auto& e : v) e /= total;
  return v;
}

}  // namespace

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("2/7"), Rational(2, 7));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational(" 6/8 "), Rational(3, 4));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Rational, FormatsAsFraction) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  Rational r(-4, 6);
  r.canonicalize();
  EXPECT_EQ(to_string(r), "-2/3");
  for (int p = -7; p <= 7; ++p)
    for (int q = 1; q <= 5; ++q) {
      Rational r(p, q);
      r.canonicalize();
      EXPECT_EQ(parse_rational(to_string(r)), r);
    }
}

TEST(Rational, PrimitiveIntegerScaling) {
  IntegerVector z = primitive_integer({Rational(2, 3), Rational(-4, 9), Rational(0)});
  EXPECT_EQ(z, (IntegerVector{3, -2, 0}));
}

TEST(Scenario, IndexAndUnpackAreInverse) {
  for (Scenario s : {Scenario::chsh(), Scenario(3, 2, 2, 3), Scenario(2, 3, 4, 2)}) {
    std::set<int> seen;
    for (int a = 0; a < s.n_a; ++a)
      for (int b = 0; b < s.n_b; ++b)
        for (int x = 0; x < s.n_x; ++x)
          for (int y = 0; y < s.n_y; ++y) {
            int i = s.index(a, b, x, y);
            ASSERT_GE(i, 0);
            ASSERT_LT(i, s.size());
            seen.insert(i);
            auto u = s.unpack(i);
            EXPECT_EQ(u, (std::array<int, 4>{a, b, x, y}));
          }
    EXPECT_EQ(static_cast<int>(seen.size()), s.size());
  }
}

TEST(Scenario, RejectsEmptyAlphabets) { EXPECT_THROW(Scenario(0, 2, 2, 2), std::invalid_argument); }

TEST(Distributions, ValidateNormalization) {
  const Scenario s = Scenario::chsh();
  EXPECT_THROW(FullDistribution(s, RationalVector(16, Rational(1, 17))), InvalidDistribution);
  EXPECT_THROW(FullDistribution(s, RationalVector(15, Rational(1, 15))), InvalidDistribution);
  RationalVector neg(16, Rational(1, 14));
  neg[0] = Rational(-1, 14);
  neg[1] = Rational(1, 14);
  EXPECT_THROW(FullDistribution(s, neg), InvalidDistribution);
  EXPECT_THROW(ConditionalDistribution(s, RationalVector(16, Rational(1, 16))), InvalidDistribution);
  EXPECT_NO_THROW(ConditionalDistribution(s, RationalVector(16, Rational(1, 4))));
  EXPECT_THROW(InputDistribution(s, RationalVector(4, Rational(1, 5))), InvalidDistribution);
}

TEST(Distributions, ComposeMarginalizeConditionRoundTrip) {
  const Scenario s = Scenario::chsh();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    RationalVector q = random_simplex_point(rng, 4);
    for (auto& e : q) e = (e + Rational(1, 4)) / 2;  // strictly positive
    RationalVector c(16);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        RationalVector block = random_simplex_point(rng, 4);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) c[s.index(a, b, x, y)] = block[a * 2 + b];
      }
    InputDistribution in(s, q);
    ConditionalDistribution cond(s, c);
    FullDistribution full = compose(in, cond);
    EXPECT_EQ(marginalize_inputs(full), in);
    EXPECT_EQ(condition_on_inputs(full), cond);
    for (int i = 0; i < 16; ++i) {
      auto [a, b, x, y] = s.unpack(i);
      EXPECT_EQ(full.values()[i], q[s.input_index(x, y)] * c[i]);
    }
  }
}

TEST(Distributions, ConditioningOnZeroInputThrows) {
  const Scenario s = Scenario::chsh();
  RationalVector q{Rational(1, 2), Rational(1, 2), 0, 0};
  FullDistribution full = compose(InputDistribution(s, q), ConditionalDistribution(s, RationalVector(16, Rational(1, 4))));
  EXPECT_THROW(condition_on_inputs(full), ZeroInputProbability);
}

TEST(Distributions, MixtureIsEntrywiseConvexCombination) {
  const Scenario s = Scenario::chsh();
  std::mt19937 rng(5);
  FullDistribution p1(s, random_simplex_point(rng, 16)), p2(s, random_simplex_point(rng, 16));
  FullDistribution m = mixture({p1, p2}, {Rational(1, 3), Rational(2, 3)});
  for (int i = 0; i < 16; ++i) EXPECT_EQ(m.values()[i], p1.values()[i] / 3 + 2 * p2.values()[i] / 3);
  EXPECT_THROW(mixture({p1}, {Rational(1, 2), Rational(1, 2)}), std::invalid_argument);
}

TEST(LinearAlgebra, NullSpaceIsAnnihilatedAndComplete) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 5;
    RationalMatrix m(rows, RationalVector(cols));
    for (auto& r : m)
      for (auto& e : r) e = pick(rng);
    RationalMatrix ns = null_space(m, cols);
    EXPECT_EQ(ns.size() + rank(m), cols);
    for (const auto& v : ns)
      for (const auto& r : m) EXPECT_EQ(dot(r, v), 0);
  }
}

TEST(LinearAlgebra, SolveAffineDetectsInconsistency) {
  RationalMatrix a{{1, 1}, {2, 2}};
  EXPECT_FALSE(solve_affine(a, {1, 3}, 2).has_value());
  auto sol = solve_affine(a, {1, 2}, 2);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->param_dim(), 1u);
  for (int t = -2; t <= 2; ++t) {
    auto x = (*sol)({Rational(t)});
    EXPECT_EQ(x[0] + x[1], 1);
  }
}
