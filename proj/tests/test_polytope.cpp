#include "mdl/linalg.hpp"
#include "mdl/lp.hpp"
#include "mdl/polytope.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

using namespace mdl;

namespace {

std::vector<RationalVector> random_points(std::mt19937& rng, std::size_t n, std::size_t d, int range = 6) {
  std::uniform_int_distribution<int> pick(-range, range);
  std::vector<RationalVector> pts(n, RationalVector(d));
  for (auto& p : pts)
    for (auto& e : p) e = pick(rng);
  return pts;
}

// Facets by brute force: every hyperplane through d affinely independent
// points that leaves all points on one side and touches an affinely
// (d-1)-dimensional set.
std::set<LinearInequality> brute_force_facets(const std::vector<RationalVector>& pts, std::size_t d) {
  std::set<LinearInequality> out;
  const std::size_t n = pts.size();
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      RationalMatrix m;
      for (auto i : idx) {
        RationalVector row = pts[i];
        row.push_back(-1);  // c.p - b = 0
        m.push_back(row);
      }
      RationalMatrix ns = null_space(m, d + 1);
      if (ns.size() != 1) return;
      LinearInequality f{RationalVector(ns[0].begin(), ns[0].begin() + d), ns[0][d]};
      if (f.is_trivial()) return;
      int sign = 0;
      bool mixed = false;
      for (const auto& p : pts) {
        int s = sgn(f.slack(p));
        if (s == 0) continue;
        if (sign == 0) sign = s;
        if (s != sign) mixed = true;
      }
      if (mixed || sign == 0) return;
      if (sign < 0) {
        for (auto& c : f.coeffs) c = -c;
        f.bound = -f.bound;
      }
      out.insert(canonical_inequality(f));
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Extreme points: those not in the convex hull of the others.
std::set<RationalVector> brute_force_extreme(const std::vector<RationalVector>& pts, std::size_t d) {
  std::set<RationalVector> uniq(pts.begin(), pts.end());
  std::set<RationalVector> out;
  for (const auto& p : uniq) {
    std::vector<RationalVector> others;
    for (const auto& q : uniq)
      if (q != p) others.push_back(q);
    if (others.empty() || std::holds_alternative<Outside>(membership(VRepresentation{d, others}, p))) out.insert(p);
  }
  return out;
}

// max c.x over {A x <= b} by enumerating basic solutions.
std::optional<Rational> brute_force_lp(const std::vector<LinearInequality>& rows, const RationalVector& c) {
  const std::size_t d = c.size();
  std::optional<Rational> best;
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      RationalMatrix a;
      RationalVector b;
      for (auto i : idx) {
        a.push_back(rows[i].coeffs);
        b.push_back(rows[i].bound);
      }
      auto sol = solve_affine(a, b, d);
      if (!sol || sol->param_dim() != 0) return;
      for (const auto& r : rows)
        if (sgn(r.slack(sol->origin)) < 0) return;
      Rational v = dot(c, sol->origin);
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(LinearProgramming, SmallKnownOptimum) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5), value 14/5
  LinearProgram lp;
  lp.num_vars = 2;
  lp.nonnegative = {true, true};
  lp.constraints = {{{1, 2}, Relation::LessEqual, 4}, {{3, 1}, Relation::LessEqual, 6}};
  lp.objective = {1, 1};
  LPResult r = solve(lp);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(r.witness, (RationalVector{Rational(8, 5), Rational(6, 5)}));
}

TEST(LinearProgramming, InfeasibleHasFarkasCertificate) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.nonnegative = {true, true};
  lp.constraints = {{{1, 1}, Relation::LessEqual, 1}, {{1, 1}, Relation::GreaterEqual, 2}};
  lp.objective = {1, 0};
  LPResult r = solve(lp);
  ASSERT_EQ(r.status, LPStatus::Infeasible);
  EXPECT_TRUE(is_farkas_certificate(lp, r.witness));
}

TEST(LinearProgramming, UnboundedHasImprovingRay) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.nonnegative = {true, false};
  lp.constraints = {{{1, -1}, Relation::LessEqual, 1}};
  lp.objective = {1, 0};
  LPResult r = solve(lp);
  ASSERT_EQ(r.status, LPStatus::Unbounded);
  EXPECT_GT(r.ray[0], 0);
  EXPECT_LE(r.ray[0] - r.ray[1], 0);
}

TEST(LinearProgramming, AgreesWithBasicSolutionEnumeration) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(-5, 5);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 2 + trial % 3;
    std::vector<LinearInequality> rows;
    for (std::size_t j = 0; j < d; ++j) {  // box keeps the region bounded
      RationalVector e(d);
      e[j] = 1;
      rows.push_back({e, Rational(4)});
      e[j] = -1;
      rows.push_back({e, Rational(4)});
    }
    for (int k = 0; k < 4; ++k) {
      RationalVector c(d);
      for (auto& x : c) x = pick(rng);
      rows.push_back({c, Rational(pick(rng) + 3)});
    }
    RationalVector obj(d);
    for (auto& x : obj) x = pick(rng);
    HRepresentation h{d, rows, {}};
    LPResult r = lp_optimize(h, obj, Sense::Maximize);
    auto oracle = brute_force_lp(rows, obj);
    if (!oracle) {
      EXPECT_EQ(r.status, LPStatus::Infeasible);
      continue;
    }
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_EQ(r.value, *oracle);
    EXPECT_TRUE(h.contains(r.witness));
    ++compared;
  }
  EXPECT_GE(compared, 60);
}

TEST(VertexFacet, RandomPolytopesMatchBruteForce) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = 2 + trial % 3;
    auto pts = random_points(rng, 6 + trial % 6, d);
    VRepresentation v = VRepresentation::from_points(d, pts);
    if (rank([&] {
          RationalMatrix m;
          for (const auto& p : v.vertices) {
            RationalVector r = p;
            for (std::size_t j = 0; j < d; ++j) r[j] -= v.vertices[0][j];
            m.push_back(r);
          }
          return m;
        }()) < d)
      continue;
    FacetEnumeration f = enumerate_facets(v);
    std::set<LinearInequality> got(f.h.inequalities.begin(), f.h.inequalities.end());
    EXPECT_EQ(got, brute_force_facets(v.vertices, d)) << "trial " << trial;
    EXPECT_TRUE(f.h.equalities.empty());

    VRepresentation back = facets_to_vertices(f.h);
    std::set<RationalVector> got_v(back.vertices.begin(), back.vertices.end());
    EXPECT_EQ(got_v, brute_force_extreme(v.vertices, d)) << "trial " << trial;
  }
}

TEST(VertexFacet, LowerDimensionalPolytopeGetsEqualities) {
  // Square in the plane x + y + z = 1 inside R^3.
  std::vector<RationalVector> pts{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
  FacetEnumeration f = enumerate_facets(VRepresentation::from_points(3, pts));
  ASSERT_EQ(f.h.equalities.size(), 1u);
  EXPECT_EQ(f.polytope_dimension, 2u);
  EXPECT_EQ(f.h.inequalities.size(), 3u);
  for (const auto& p : pts) EXPECT_TRUE(f.h.contains(p));
  VRepresentation back = facets_to_vertices(f.h);
  EXPECT_EQ(back.vertices.size(), 3u);
}

TEST(VertexFacet, CubeHasSixFacetsAndEightVertices) {
  std::vector<RationalVector> pts;
  for (int m = 0; m < 8; ++m) pts.push_back({m & 1, (m >> 1) & 1, (m >> 2) & 1});
  pts.push_back({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  FacetEnumeration f = enumerate_facets(VRepresentation::from_points(3, pts));
  EXPECT_EQ(f.h.inequalities.size(), 6u);
  for (const auto& inc : f.incident) EXPECT_EQ(inc.size(), 4u);
  EXPECT_EQ(facets_to_vertices(f.h).vertices.size(), 8u);
}

TEST(Redundancy, RemovesImpliedInequalitiesWithCertificates) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> w(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 3;
    auto pts = random_points(rng, 8, d);
    FacetEnumeration f = enumerate_facets(VRepresentation::from_points(d, pts));
    if (!f.h.equalities.empty()) continue;
    HRepresentation noisy = f.h;
    for (int k = 0; k < 6; ++k) {  // nonnegative combinations, loosened
      LinearInequality r{RationalVector(d), Rational(w(rng))};
      for (const auto& fac : f.h.inequalities) {
        int c = w(rng);
        for (std::size_t j = 0; j < d; ++j) r.coeffs[j] += c * fac.coeffs[j];
        r.bound += c * fac.bound;
      }
      if (!r.is_trivial()) noisy.inequalities.push_back(r);
      auto dup = f.h.inequalities[k % f.h.inequalities.size()];
      for (auto& c : dup.coeffs) c *= 3;
      dup.bound *= 3;
      noisy.inequalities.push_back(dup);
    }
    std::shuffle(noisy.inequalities.begin(), noisy.inequalities.end(), rng);
    IrredundantSystem irr = remove_redundant_certified(noisy);
    std::set<LinearInequality> got(irr.h.inequalities.begin(), irr.h.inequalities.end());
    std::set<LinearInequality> want(f.h.inequalities.begin(), f.h.inequalities.end());
    EXPECT_EQ(got, want) << "trial " << trial;
    ASSERT_EQ(irr.certificates.size(), irr.h.inequalities.size());
    for (std::size_t i = 0; i < irr.h.inequalities.size(); ++i) {
      EXPECT_LT(sgn(irr.h.inequalities[i].slack(irr.certificates[i])), 0);
      for (std::size_t j = 0; j < irr.h.inequalities.size(); ++j) {
        if (j != i) {
          EXPECT_GE(sgn(irr.h.inequalities[j].slack(irr.certificates[i])), 0);
        }
      }
    }
  }
}

TEST(Membership, InsideWeightsAndOutsideSeparator) {
  std::vector<RationalVector> square{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
  VRepresentation v{2, square};
  Membership in = membership(v, {1, Rational(1, 2)});
  ASSERT_TRUE(std::holds_alternative<Inside>(in));
  RationalVector mix(2);
  const auto& w = std::get<Inside>(in).weights;
  for (std::size_t i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) mix[j] += w[i] * square[i][j];
  EXPECT_EQ(mix, (RationalVector{1, Rational(1, 2)}));

  RationalVector p{3, 1};
  Membership out = membership(v, p);
  ASSERT_TRUE(std::holds_alternative<Outside>(out));
  const auto& sep = std::get<Outside>(out).separator;
  for (const auto& q : square) EXPECT_GE(sgn(sep.slack(q)), 0);
  EXPECT_LT(sgn(sep.slack(p)), 0);
  EXPECT_EQ(hull_distance(v, p), 1);
  EXPECT_EQ(hull_distance(v, {1, 1}), 0);
}

TEST(Restriction, SubstitutesAndRemovesRedundancy) {
  // Unit cube restricted to x = y: the square 0 <= x <= 1, 0 <= z <= 1.
  HRepresentation cube{3, {}, {}};
  for (std::size_t j = 0; j < 3; ++j) {
    RationalVector e(3);
    e[j] = 1;
    cube.inequalities.push_back({e, 1});
    e[j] = -1;
    cube.inequalities.push_back({e, 0});
  }
  HRepresentation r = restrict_to_subspace(cube, {{{1, -1, 0}, 0}});
  EXPECT_EQ(r.dimension, 2u);
  EXPECT_EQ(r.inequalities.size(), 4u);
  EXPECT_EQ(facets_to_vertices(r).vertices.size(), 4u);
  EXPECT_THROW(restrict_to_subspace(cube, {{{1, 0, 0}, 0}, {{1, 0, 0}, 1}}), InconsistentEqualities);
}

TEST(TextFormat, RoundTripsBothRepresentations) {
  VRepresentation v{3, {{Rational(1, 2), 0, 1}, {2, Rational(-1, 3), 0}}};
  std::stringstream vs;
  write_vrep(vs, v, {"header"});
  auto rv = read_representation(vs);
  ASSERT_TRUE(std::holds_alternative<VRepresentation>(rv));
  EXPECT_EQ(std::get<VRepresentation>(rv).vertices, VRepresentation::from_points(3, v.vertices).vertices);

  HRepresentation h{2, {{{1, 2}, 3}}, {{{1, -1}, Rational(1, 2)}}};
  std::stringstream hs;
  write_hrep(hs, h);
  auto rh = read_representation(hs);
  ASSERT_TRUE(std::holds_alternative<HRepresentation>(rh));
  EXPECT_EQ(std::get<HRepresentation>(rh).inequalities, h.inequalities);
  EXPECT_EQ(std::get<HRepresentation>(rh).equalities, h.equalities);

  std::stringstream bad("dim 2\n1 2 3\n");
  EXPECT_THROW(read_representation(bad), ParseError);
  std::stringstream mixed("dim 1\n1\n1 <= 2\n");
  EXPECT_THROW(read_representation(mixed), ParseError);
}
