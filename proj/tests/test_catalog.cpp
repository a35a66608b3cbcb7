#include "mdl/catalog.hpp"
#include "mdl/mdl_model.hpp"
#include "mdl/pipeline.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mdl;

namespace {

Rational q(long p, long r) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

std::vector<std::pair<Rational, Rational>> bounds_grid() {
  std::vector<std::pair<Rational, Rational>> out;
  for (long ln = 0; ln <= 5; ++ln)
    for (long hn = 6; hn <= 24; hn += 2) out.emplace_back(q(ln, 24), q(hn, 24));
  return out;
}

}  // namespace

TEST(Golden, CoefficientsByIndex) {
  SourceBounds b(q(1, 10), q(3, 10));
  const Scenario s = b.scenario;
  LinearInequality g = golden_inequality(b);
  for (int i = 0; i < 16; ++i) {
    auto [a, bb, x, y] = s.unpack(i);
    Rational want = 0;
    if (a == 0 && bb == 0 && x == 0 && y == 0) want = b.lower;
    if ((a == 0 && bb == 1 && x == 0 && y == 1) || (a == 1 && bb == 0 && x == 1 && y == 0) ||
        (a == 0 && bb == 0 && x == 1 && y == 1))
      want = -b.upper;
    EXPECT_EQ(g.coeffs[i], want);
  }
  EXPECT_EQ(g.bound, 0);
}

TEST(Golden, VertexMaximumIsExactlyZero) {
  int checked = 0;
  for (auto [l, h] : bounds_grid()) {
    SourceBounds b(l, h);
    LinearInequality g = golden_inequality(b);
    VRepresentation v = mdl_vertices(b);
    Rational best = evaluate(g, v.vertices.front());
    for (const auto& p : v.vertices) best = std::max(best, evaluate(g, p));
    EXPECT_EQ(best, 0) << "l=" << l << " h=" << h;
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Chsh, ValuesOfLocalAndPrBoxes) {
  EXPECT_EQ(chsh_value(pr_box()), 4);
  Rational best = -4;
  for (const auto& v : local_vertices(Scenario::chsh())) best = std::max(best, chsh_value(v.distribution));
  EXPECT_EQ(best, 2);
  EXPECT_EQ(dot(chsh_full(), compose(InputDistribution::uniform(Scenario::chsh()), pr_box()).values()), 1);
}

TEST(Chsh, EffectiveLowerBound) {
  EXPECT_EQ(effective_lower(SourceBounds(0, q(2, 7))), q(1, 7));
  EXPECT_EQ(effective_lower(SourceBounds(q(1, 5), q(1, 3))), q(1, 5));
  EXPECT_EQ(effective_lower(SourceBounds(0, q(1, 2))), 0);
}

TEST(Chsh, MdlBoundAgreesWithLinearProgram) {
  std::set<std::size_t> patterns;
  const auto eqs = ns_uniform_constraints().equalities;
  for (auto [l, h] : std::vector<std::pair<Rational, Rational>>{{0, q(2, 7)},
                                                                {0, q(3, 10)},
                                                                {q(1, 8), q(5, 16)},
                                                                {q(1, 5), q(1, 3)},
                                                                {q(1, 12), q(1, 3)},
                                                                {q(1, 10), q(1, 2)},
                                                                {q(1, 4), q(1, 4)}}) {
    SourceBounds b(l, h);
    MdlChshBound r = mdl_chsh_bound(b);
    Rational lp = std::max(l, Rational(1 - 3 * h));
    EXPECT_EQ(r.l_prime, lp);
    EXPECT_EQ(r.conditional_bound, 4 * (1 - 2 * lp));
    HullOptimum opt = optimize_over_hull(mdl_vertices(b), eqs, chsh_full(), Sense::Maximize);
    ASSERT_EQ(opt.status, LPStatus::Optimal);
    EXPECT_EQ(4 * opt.value, r.conditional_bound) << "l=" << l << " h=" << h;
    EXPECT_TRUE(r.witness_nonsignaling);
    EXPECT_TRUE(r.witness_uniform_inputs);
    EXPECT_EQ(4 * dot(chsh_full(), r.witness), r.conditional_bound);
    patterns.insert(r.maximizers.size());
  }
  EXPECT_TRUE(patterns.count(8));
  EXPECT_TRUE(patterns.count(24));
  EXPECT_TRUE(patterns.count(48));
}

TEST(Table, RowSevenClosedForm) {
  Rational h = q(2, 7);
  TableRow row = table1_row(7, h);
  RationalVector want{1 - 4 * h, -1 + 3 * h, 0, -1 + 3 * h, 1 - 3 * h, h, 0, h, -h};
  EXPECT_EQ(row, want);
  EXPECT_THROW(table1_row(0, h), std::out_of_range);
  EXPECT_THROW(table1_row(8, h), std::out_of_range);
}

TEST(Table, DoubleAndExactEvaluationAgree) {
  const Rational h = q(3, 11);
  RationalVector t{q(1, 2), q(1, 3), q(1, 4), q(1, 5), q(1, 6), q(1, 7), q(1, 8), q(1, 9)};
  for (int i = 1; i <= kTableFamilies; ++i) {
    Rational exact = evaluate(table1_family(i, h), t);
    double approx = evaluate_row(table1_row(i, h.get_d()), to_double(t));
    EXPECT_NEAR(approx, exact.get_d(), 1e-12);
  }
}

TEST(Table, ValidAndSaturatedOverConstrainedPolytope) {
  for (Rational h : {q(2, 7), q(3, 10), q(5, 17)}) {
    ScanPoint sp = check_table_at(h);
    ASSERT_EQ(sp.checks.size(), 7u);
    EXPECT_TRUE(sp.all_valid()) << h;
    EXPECT_TRUE(sp.all_saturated()) << h;
    for (const auto& c : sp.checks) {
      // The witness lies on the slice and attains the reported value.
      EXPECT_TRUE(ns_uniform_constraints().satisfied_by(c.witness));
      EXPECT_EQ(evaluate(table1_family(c.family, h), TableBasis::coordinates(c.witness)), c.max_value);
    }
  }
}

TEST(CriticalH, BisectionOnKnownFunctions) {
  CriticalPoint c = critical_h([](double h) { return 0.3 - h; }, 0.25, 1.0 / 3);
  EXPECT_TRUE(c.violated);
  EXPECT_NEAR(c.h, 0.3, 1e-9);
  EXPECT_FALSE(critical_h([](double) { return -1.0; }, 0.25, 1.0 / 3).violated);
  CriticalPoint all = critical_h([](double) { return 1.0; }, 0.25, 1.0 / 3);
  EXPECT_TRUE(all.violated);
  EXPECT_DOUBLE_EQ(all.h, 1.0 / 3);
}
