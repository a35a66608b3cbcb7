#pragma once

// End-to-end analyses built from the modules: the facet pipeline
// (vertices -> facets -> nonsignaling/uniform slice -> families), matching of
// the slice families against the h-dependent table, the LP validity and
// saturation scan, and 2D slices of the correlation sets.

#include "mdl/catalog.hpp"
#include "mdl/mdl_model.hpp"
#include "mdl/physical_constraints.hpp"
#include "mdl/polytope.hpp"
#include "mdl/quantum.hpp"
#include "mdl/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mdl {

/// The uniform full distribution P(abxy) = 1/16.
inline RationalVector uniform_point(const Scenario& s = Scenario::chsh()) {
  return RationalVector(s.size(), Rational(1, s.size()));
}

/// Positivity P(11|11) >= 0 on the slice, i.e. 1 - PA(0|1) - PB(0|1) + P(00|11) >= 0.
inline LinearInequality slice_positivity() {
  LinearInequality p;
  p.coeffs.assign(TableBasis::kParams, Rational(0));
  p.coeffs[TableBasis::alice(1)] = 1;
  p.coeffs[TableBasis::bob(1)] = 1;
  p.coeffs[TableBasis::joint(1, 1)] = -1;
  p.bound = 1;
  return canonical_inequality(p);
}

struct FacetPipeline {
  SourceBounds bounds;
  VRepresentation vertices;
  FacetEnumeration facets;
  bool restricted = false;
  bool slice_meets_interior = false;  // the uniform point is strictly inside every facet
  HRepresentation slice;              // restricted facets in TableBasis coordinates
  std::vector<Family> families;
};

/// Vertices, facets and, with `restrict_ns_uniform`, the facets on the
/// nonsignaling uniform-input slice grouped into relabeling families. Without
/// restriction, families are formed over full coordinates.
inline FacetPipeline run_facet_pipeline(const SourceBounds& b, bool restrict_ns_uniform) {
  FacetPipeline out{b, mdl_vertices(b), {}, restrict_ns_uniform, false, {}, {}};
  out.facets = enumerate_facets(out.vertices);
  const RationalVector centre = uniform_point(b.scenario);
  out.slice_meets_interior = true;
  for (const auto& f : out.facets.h.inequalities)
    if (sgn(f.slack(centre)) <= 0) out.slice_meets_interior = false;

  RelabelingGroup group(b.scenario);
  if (!restrict_ns_uniform) {
    out.families = classify_families(out.facets.h.inequalities, group,
                                     flat_action(b.scenario, out.facets.h.equalities));
    return out;
  }
  if (!(b.scenario == Scenario::chsh())) throw ScenarioMismatch("the slice restriction is defined for (2,2,2,2)");
  std::optional<RationalVector> hint;
  if (out.slice_meets_interior) hint = TableBasis::coordinates(centre);
  out.slice = restrict_to_subspace(out.facets.h, ns_uniform_constraints(b.scenario).equalities, TableBasis::map(), hint);
  out.families = classify_families(out.slice.inequalities, group, slice_action(group));
  return out;
}

struct TableMatch {
  std::vector<int> family_of_row;  // per table row 1..7: index into families, or -1
  int positivity = -1;             // family containing positivity, or -1
  bool exact = false;              // 8 families: the 7 rows and positivity, all distinct
};

/// Locates each table row (evaluated at h) and positivity among the families.
inline TableMatch match_table(const std::vector<Family>& families, const Rational& h) {
  RelabelingGroup group;
  auto act = slice_action(group);
  auto locate = [&](const LinearInequality& ineq) {
    auto o = orbit(canonical_inequality(ineq), group, act);
    for (std::size_t k = 0; k < families.size(); ++k)
      if (std::binary_search(o.begin(), o.end(), families[k].representative)) return static_cast<int>(k);
    return -1;
  };
  TableMatch m;
  for (int i = 1; i <= kTableFamilies; ++i) m.family_of_row.push_back(locate(table1_family(i, h)));
  m.positivity = locate(slice_positivity());
  std::vector<int> all = m.family_of_row;
  all.push_back(m.positivity);
  std::sort(all.begin(), all.end());
  m.exact = families.size() == 8 && all.front() >= 0 && std::adjacent_find(all.begin(), all.end()) == all.end();
  return m;
}

/// A slice inequality (c.t <= b) as a functional over full probabilities on
/// the slice: returns (coefficients, constant) with c.t - b = coeffs.p + constant.
inline std::pair<RationalVector, Rational> slice_functional(const LinearInequality& slice_ineq) {
  const Scenario s = Scenario::chsh();
  RationalVector c(s.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    RationalVector e(s.size());
    e[i] = 1;
    c[i] = dot(slice_ineq.coeffs, TableBasis::coordinates(e));
  }
  return {c, -slice_ineq.bound};
}

struct FamilyCheck {
  int family = 0;
  Rational max_value;  // maximum of the left-hand side over the constrained polytope
  bool valid = false;  // max_value <= 0
  bool saturated = false;  // max_value == 0
  RationalVector witness;  // maximizing full distribution
};

struct ScanPoint {
  Rational h;
  std::vector<FamilyCheck> checks;
  bool all_valid() const {
    return std::all_of(checks.begin(), checks.end(), [](const FamilyCheck& c) { return c.valid; });
  }
  bool all_saturated() const {
    return std::all_of(checks.begin(), checks.end(), [](const FamilyCheck& c) { return c.saturated; });
  }
};

/// Maximizes every table family at h over the MDL(0, h) polytope intersected
/// with the nonsignaling and uniform-input equalities.
inline ScanPoint check_table_at(const Rational& h) {
  SourceBounds b(Rational(0), h);
  VRepresentation v = mdl_vertices(b);
  auto eqs = ns_uniform_constraints(b.scenario).equalities;
  ScanPoint out{h, {}};
  for (int i = 1; i <= kTableFamilies; ++i) {
    auto [c, k] = slice_functional(table1_family(i, h));
    HullOptimum opt = optimize_over_hull(v, eqs, c, Sense::Maximize);
    if (opt.status != LPStatus::Optimal) throw std::logic_error("constrained MDL polytope is empty");
    FamilyCheck fc{i, opt.value + k, false, false, opt.point};
    fc.valid = sgn(fc.max_value) <= 0;
    fc.saturated = sgn(fc.max_value) == 0;
    out.checks.push_back(std::move(fc));
  }
  return out;
}

/// Seeded rational samples h = 1/4 + k / (12 N) with 1 <= k < N, strictly
/// inside ]1/4, 1/3[.
inline std::vector<Rational> random_h_values(std::size_t count, std::uint64_t seed, long resolution = 1000000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(1, resolution - 1);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rational h = Rational(1, 4) + Rational(pick(rng), 12 * resolution);
    h.canonicalize();
    out.push_back(h);
  }
  return out;
}

// --------------------------------------------------------------------------
// 2D slices
// --------------------------------------------------------------------------

/// Plane centre + u d1 + v d2 in full-probability coordinates.
struct SliceSpec {
  RationalVector center;
  RationalVector direction1;
  RationalVector direction2;
  int resolution = 360;
};

/// The PR-box plane: centre uniform, d1 towards the CHSH PR box, d2 towards a
/// PR box with CHSH value 0. Along d1 the CHSH value is 4u.
inline SliceSpec chsh_plane(int resolution = 360) {
  const Scenario s = Scenario::chsh();
  const InputDistribution q = InputDistribution::uniform(s);
  RationalVector c = uniform_point(s);
  RationalVector pr = compose(q, pr_box(0, 0, 0)).values();
  RationalVector pr2 = compose(q, pr_box(1, 0, 0)).values();
  SliceSpec spec{c, RationalVector(s.size()), RationalVector(s.size()), resolution};
  for (std::size_t i = 0; i < c.size(); ++i) {
    spec.direction1[i] = pr[i] - c[i];
    spec.direction2[i] = pr2[i] - c[i];
  }
  return spec;
}

struct SlicePoint {
  int ray = 0;
  double angle = 0;
  double u = 0;
  double v = 0;
  std::string exact_u;  // empty for sampled (non-exact) boundaries
  std::string exact_v;
};

/// Ray direction for angle index k out of n: cosine and sine rounded to six
/// decimals, so axis and diagonal rays are exact.
inline std::pair<Rational, Rational> ray_direction(int k, int n) {
  const double phi = 2 * std::numbers::pi * k / n;
  auto six = [](double x) {
    Rational r(static_cast<long>(std::lround(x * 1e6)), 1000000);
    r.canonicalize();
    return r;
  };
  return {six(std::cos(phi)), six(std::sin(phi))};
}

/// Boundary of conv(points) within the plane, by exact LP ray shooting from
/// the centre, which must lie in the hull.
inline std::vector<SlicePoint> polytope_slice(const SliceSpec& spec, const std::vector<RationalVector>& points) {
  const std::size_t n = points.size(), d = spec.center.size();
  std::vector<SlicePoint> out;
  for (int k = 0; k < spec.resolution; ++k) {
    auto [cu, cv] = ray_direction(k, spec.resolution);
    RationalVector w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = cu * spec.direction1[j] + cv * spec.direction2[j];
    // Variables: weights (n, nonnegative) then s (free). sum a_i p_i - s w = centre.
    LinearProgram lp;
    lp.num_vars = n + 1;
    lp.nonnegative.assign(n + 1, true);
    lp.nonnegative[n] = false;
    Constraint norm{RationalVector(n + 1, Rational(1)), Relation::Equal, Rational(1)};
    norm.coeffs[n] = 0;
    lp.constraints.push_back(std::move(norm));
    for (std::size_t j = 0; j < d; ++j) {
      Constraint c{RationalVector(n + 1), Relation::Equal, spec.center[j]};
      for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = points[i][j];
      c.coeffs[n] = -w[j];
      lp.constraints.push_back(std::move(c));
    }
    lp.objective.assign(n + 1, Rational(0));
    lp.objective[n] = 1;
    lp.sense = Sense::Maximize;
    LPResult r = solve(lp);
    if (r.status != LPStatus::Optimal) throw std::invalid_argument("slice centre is not inside the set");
    Rational u = r.value * cu, v = r.value * cv;
    out.push_back({k, 2 * std::numbers::pi * k / spec.resolution, u.get_d(), v.get_d(), to_string(u), to_string(v)});
  }
  return out;
}

/// Boundary of the projection of the quantum set onto the plane coordinates,
/// sampled by maximizing the support function in each direction over real
/// two-qubit strategies. Coordinates are the least-squares (u, v) of the
/// full distribution relative to the plane.
inline std::vector<SlicePoint> quantum_slice(const SliceSpec& spec, unsigned seed = 1) {
  const std::size_t d = spec.center.size();
  auto d1 = to_double(spec.direction1), d2 = to_double(spec.direction2), c = to_double(spec.center);
  double g11 = 0, g12 = 0, g22 = 0;
  for (std::size_t j = 0; j < d; ++j) {
    g11 += d1[j] * d1[j];
    g12 += d1[j] * d2[j];
    g22 += d2[j] * d2[j];
  }
  const double det = g11 * g22 - g12 * g12;
  auto coords = [&](const std::vector<double>& box) {
    auto p = compose(box, kUniformInputs);
    double r1 = 0, r2 = 0;
    for (std::size_t j = 0; j < d; ++j) {
      r1 += (p[j] - c[j]) * d1[j];
      r2 += (p[j] - c[j]) * d2[j];
    }
    return std::pair<double, double>{(g22 * r1 - g12 * r2) / det, (g11 * r2 - g12 * r1) / det};
  };
  std::vector<SlicePoint> out;
  for (int k = 0; k < spec.resolution; ++k) {
    const double phi = 2 * std::numbers::pi * k / spec.resolution;
    auto support = [&](const std::vector<double>& box) {
      auto [u, v] = coords(box);
      return std::cos(phi) * u + std::sin(phi) * v;
    };
    auto [strategy, value] = search_real_strategy(support, seed + static_cast<unsigned>(k), 4, 300);
    auto [u, v] = coords(strategy.box());
    out.push_back({k, phi, u, v, "", ""});
  }
  return out;
}

}  // namespace mdl
