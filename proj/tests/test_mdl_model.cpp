#include "mdl/mdl_model.hpp"
#include "mdl/linalg.hpp"
#include "mdl/polytope.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace mdl;

namespace {

Rational q(long p, long r) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

// Vertices of {l <= q_i <= h, sum q = 1} by brute force: fix three of the
// four coordinates at a bound, solve for the fourth and keep feasible points.
std::set<RationalVector> brute_force_input_vertices(const Rational& l, const Rational& h) {
  std::set<RationalVector> out;
  for (int free = 0; free < 4; ++free) {
    for (int mask = 0; mask < 8; ++mask) {
      RationalVector v(4);
      Rational rest = 1;
      int bit = 0;
      for (int i = 0; i < 4; ++i) {
        if (i == free) continue;
        v[i] = (mask >> bit++) & 1 ? h : l;
        rest -= v[i];
      }
      v[free] = rest;
      if (rest >= l && rest <= h) out.insert(v);
    }
  }
  return out;
}

}  // namespace

TEST(SourceBounds, ValidatesRange) {
  EXPECT_NO_THROW(SourceBounds(0, q(2, 7)));
  EXPECT_THROW(SourceBounds(q(-1, 10), q(1, 3)), InvalidBounds);
  EXPECT_THROW(SourceBounds(q(3, 10), q(1, 3)), InvalidBounds);
  EXPECT_THROW(SourceBounds(0, q(1, 5)), InvalidBounds);
  EXPECT_THROW(SourceBounds(0, q(6, 5)), InvalidBounds);
}

TEST(InputPolytope, MatchesBruteForceOnGrid) {
  int checked = 0;
  for (long ln = 0; ln <= 6; ++ln) {
    for (long hn = 6; hn <= 24; ++hn) {
      Rational l = q(ln, 24), h = q(hn, 24);
      if (l > q(1, 4) || h < q(1, 4)) continue;
      SourceBounds b(l, h);
      VRepresentation v = input_polytope_vertices(b);
      std::set<RationalVector> got(v.vertices.begin(), v.vertices.end());
      EXPECT_EQ(got.size(), v.vertices.size());
      EXPECT_EQ(got, brute_force_input_vertices(l, h)) << "l=" << l << " h=" << h;
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(InputPolytope, PatternCounts) {
  EXPECT_EQ(input_polytope_vertices(SourceBounds(0, q(2, 7))).vertices.size(), 4u);
  auto single = input_polytope_vertices(SourceBounds(q(1, 4), q(1, 4)));
  ASSERT_EQ(single.vertices.size(), 1u);
  EXPECT_EQ(single.vertices[0], RationalVector(4, q(1, 4)));
  EXPECT_EQ(input_polytope_vertices(SourceBounds(0, q(1, 4))).vertices.size(), 1u);
  EXPECT_EQ(input_polytope_vertices(SourceBounds(q(1, 8), q(5, 16))).vertices.size(), 12u);
  InputPattern p = input_pattern(SourceBounds(q(1, 8), q(5, 16)));
  EXPECT_EQ(p.count_h, 2u);
  EXPECT_EQ(p.count_l, 1u);
  EXPECT_EQ(p.f, q(1, 4));
}

TEST(LocalVertices, SixteenDistinctDeterministicBoxes) {
  auto loc = local_vertices(Scenario::chsh());
  ASSERT_EQ(loc.size(), 16u);
  std::set<RationalVector> distinct;
  for (const auto& v : loc) {
    distinct.insert(v.distribution.values());
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) EXPECT_EQ(v.distribution(v.strategy.alice[x], v.strategy.bob[y], x, y), 1);
  }
  EXPECT_EQ(distinct.size(), 16u);
  EXPECT_EQ(local_vertices(Scenario(3, 2, 2, 3)).size(), 8u * 9u);
}

TEST(MdlVertices, CountsAndProductStructure) {
  EXPECT_EQ(mdl_vertices(SourceBounds(0, q(2, 7))).vertices.size(), 64u);
  EXPECT_EQ(mdl_vertices(SourceBounds(q(1, 4), q(1, 4))).vertices.size(), 16u);
  EXPECT_EQ(mdl_vertices(SourceBounds(q(1, 8), q(5, 16))).vertices.size(), 192u);

  SourceBounds b(q(1, 20), q(7, 20));
  VRepresentation v = mdl_vertices(b);
  const Scenario s = b.scenario;
  auto inputs = brute_force_input_vertices(b.lower, b.upper);
  for (const auto& p : v.vertices) {
    Rational total = 0;
    RationalVector marg(4);
    for (int i = 0; i < 16; ++i) {
      auto [a, bb, x, y] = s.unpack(i);
      marg[s.input_index(x, y)] += p[i];
      EXPECT_GE(p[i], 0);
      total += p[i];
    }
    EXPECT_EQ(total, 1);
    EXPECT_TRUE(inputs.count(marg)) << "input marginal is not an input-polytope vertex";
    // Deterministic outputs: one nonzero entry per input pair.
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        int nonzero = 0;
        for (int a = 0; a < 2; ++a)
          for (int bb = 0; bb < 2; ++bb) nonzero += sgn(p[s.index(a, bb, x, y)]) != 0;
        EXPECT_LE(nonzero, 1);
      }
  }
}

TEST(MdlVertices, EveryVertexIsExtreme) {
  VRepresentation v = mdl_vertices(SourceBounds(0, q(2, 7)));
  for (std::size_t i = 0; i < v.vertices.size(); i += 7) {
    std::vector<RationalVector> others;
    for (std::size_t j = 0; j < v.vertices.size(); ++j)
      if (j != i) others.push_back(v.vertices[j]);
    EXPECT_TRUE(std::holds_alternative<Outside>(membership(VRepresentation{16, others}, v.vertices[i])));
  }
}

TEST(MinEntropy, ConversionToBounds) {
  SourceBounds b = min_entropy_to_bounds(q(1, 3));
  EXPECT_EQ(b.lower, 0);
  EXPECT_EQ(b.upper, q(1, 3));
  EXPECT_EQ(min_entropy_bits_to_bounds(2.0).upper, q(1, 4));
  EXPECT_EQ(min_entropy_bits_to_bounds(1.0).upper, q(1, 2));
  EXPECT_THROW(min_entropy_to_bounds(q(1, 5)), InvalidBounds);
}

TEST(BoundaryNote, FlagsTheTwoRegimes) {
  EXPECT_TRUE(boundary_note(SourceBounds(q(1, 4), q(1, 4))).has_value());
  EXPECT_TRUE(boundary_note(SourceBounds(0, q(1, 4))).has_value());
  EXPECT_TRUE(boundary_note(SourceBounds(0, q(1, 3))).has_value());
  EXPECT_TRUE(boundary_note(SourceBounds(0, q(1, 2))).has_value());
  EXPECT_FALSE(boundary_note(SourceBounds(0, q(2, 7))).has_value());
  EXPECT_FALSE(boundary_note(SourceBounds(q(1, 100), q(1, 3))).has_value());
}
