#pragma once

// Exact convex-polytope machinery: V- and H-representations, conversion
// between them, LP optimization and membership, redundancy removal and
// restriction to affine subspaces.

#include "mdl/double_description.hpp"
#include "mdl/linalg.hpp"
#include "mdl/lp.hpp"
#include "mdl/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mdl {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InconsistentEqualities : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// coeffs . p <= bound (or == bound when used as an equality).
struct LinearInequality {
  RationalVector coeffs;
  Rational bound;

  Rational slack(const RationalVector& p) const { return bound - dot(coeffs, p); }
  bool is_trivial() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return sgn(c) == 0; });
  }

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
  friend bool operator<(const LinearInequality& a, const LinearInequality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.bound < b.bound;
  }
};

/// Positive rescaling to integer entries with gcd 1 over coefficients and bound.
inline LinearInequality canonical_inequality(const LinearInequality& in) {
  RationalVector all = in.coeffs;
  all.push_back(in.bound);
  IntegerVector z = primitive_integer(all);
  LinearInequality out;
  out.bound = z.back();
  z.pop_back();
  out.coeffs = to_rational(z);
  return out;
}

/// As canonical_inequality, and the first nonzero entry is made positive.
inline LinearInequality canonical_equality(const LinearInequality& in) {
  LinearInequality out = canonical_inequality(in);
  for (const auto& c : out.coeffs) {
    if (sgn(c) == 0) continue;
    if (sgn(c) < 0) {
      for (auto& e : out.coeffs) e = -e;
      out.bound = -out.bound;
    }
    break;
  }
  if (out.is_trivial() && sgn(out.bound) < 0) out.bound = -out.bound;
  return out;
}

struct VRepresentation {
  std::size_t dimension = 0;
  std::vector<RationalVector> vertices;

  /// Sorts and removes exact duplicates.
  static VRepresentation from_points(std::size_t dim, std::vector<RationalVector> pts) {
    for (const auto& p : pts)
      if (p.size() != dim) throw DimensionMismatch("vertex of wrong dimension");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return VRepresentation{dim, std::move(pts)};
  }
};

struct HRepresentation {
  std::size_t dimension = 0;
  std::vector<LinearInequality> inequalities;
  std::vector<LinearInequality> equalities;

  bool contains(const RationalVector& p) const {
    for (const auto& e : equalities)
      if (sgn(e.slack(p)) != 0) return false;
    for (const auto& i : inequalities)
      if (sgn(i.slack(p)) < 0) return false;
    return true;
  }
};

inline void check_dimension(const HRepresentation& h) {
  for (const auto& r : h.inequalities)
    if (r.coeffs.size() != h.dimension) throw DimensionMismatch("inequality of wrong dimension");
  for (const auto& r : h.equalities)
    if (r.coeffs.size() != h.dimension) throw DimensionMismatch("equality of wrong dimension");
}

// --------------------------------------------------------------------------
// V -> H
// --------------------------------------------------------------------------

struct FacetEnumeration {
  HRepresentation h;
  std::vector<std::vector<std::size_t>> incident;  // vertex indices per inequality
  std::size_t polytope_dimension = 0;
};

/// Facets of conv(vertices) plus equalities of the affine hull. Facet
/// inequalities are canonical and sorted; equalities are a reduced basis.
inline FacetEnumeration enumerate_facets(const VRepresentation& v) {
  if (v.vertices.empty()) throw std::invalid_argument("vertices_to_facets: no vertices");
  const std::size_t d = v.dimension;
  const std::size_t n = v.vertices.size();

  // Homogenized points (1, v_i).
  RationalMatrix w(n, RationalVector(d + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (v.vertices[i].size() != d) throw DimensionMismatch("vertex of wrong dimension");
    w[i][0] = 1;
    for (std::size_t j = 0; j < d; ++j) w[i][j + 1] = v.vertices[i][j];
  }

  FacetEnumeration out;
  out.h.dimension = d;

  // Affine hull: null space of W gives (beta, c) with beta + c . v = 0.
  RationalMatrix hull = null_space(w, d + 1);
  for (const auto& z : hull) {
    LinearInequality eq;
    eq.coeffs.assign(z.begin() + 1, z.end());
    for (auto& e : eq.coeffs) e = -e;
    eq.bound = z[0];
    out.h.equalities.push_back(canonical_equality(eq));
  }
  std::sort(out.h.equalities.begin(), out.h.equalities.end());

  // Pivot columns of W are coordinates that stay independent on the hull, so
  // projecting onto them is injective there.
  RowEchelon row_basis = reduced_row_echelon(w, d + 1);
  const std::vector<std::size_t>& keep = row_basis.pivots;
  const std::size_t r = keep.size();
  out.polytope_dimension = r - 1;

  std::vector<IntegerVector> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector proj(r);
    for (std::size_t k = 0; k < r; ++k) proj[k] = w[i][keep[k]];
    rows.push_back(primitive_integer(proj));
  }
  std::vector<ConeRay> rays = extreme_rays(rows);

  std::vector<std::pair<LinearInequality, std::vector<std::size_t>>> facets;
  for (const auto& ray : rays) {
    RationalVector lifted(d + 1);
    for (std::size_t k = 0; k < r; ++k) lifted[keep[k]] = ray.direction[k];
    LinearInequality f;
    f.bound = lifted[0];
    f.coeffs.assign(lifted.begin() + 1, lifted.end());
    for (auto& e : f.coeffs) e = -e;
    if (f.is_trivial()) continue;
    facets.emplace_back(canonical_inequality(f), ray.tight.members());
  }
  std::sort(facets.begin(), facets.end());
  for (auto& [f, inc] : facets) {
    out.h.inequalities.push_back(std::move(f));
    out.incident.push_back(std::move(inc));
  }
  return out;
}

inline HRepresentation vertices_to_facets(const VRepresentation& v) { return enumerate_facets(v).h; }

// --------------------------------------------------------------------------
// H -> V (the dual application of the same cone conversion)
// --------------------------------------------------------------------------

struct VertexEnumeration {
  VRepresentation v;
  std::vector<IncidenceSet> tight;  // per vertex: indices of tight inequalities
};

inline VertexEnumeration enumerate_vertices(const HRepresentation& h,
                                            const std::optional<RationalVector>& interior = std::nullopt) {
  check_dimension(h);
  const std::size_t d = h.dimension;
  // Homogenized variables (t, p); equalities b t - c.p = 0 cut a subspace.
  RationalMatrix eqs;
  for (const auto& e : h.equalities) {
    RationalVector row(d + 1);
    row[0] = e.bound;
    for (std::size_t j = 0; j < d; ++j) row[j + 1] = -e.coeffs[j];
    eqs.push_back(std::move(row));
  }
  RationalMatrix basis;
  if (eqs.empty()) {
    for (std::size_t j = 0; j <= d; ++j) {
      RationalVector u(d + 1);
      u[j] = 1;
      basis.push_back(std::move(u));
    }
  } else {
    basis = null_space(eqs, d + 1);
  }
  const std::size_t k = basis.size();
  if (k == 0) return VertexEnumeration{VRepresentation{d, {}}, {}};

  auto project = [&](const RationalVector& g) {
    RationalVector out(k);
    for (std::size_t m = 0; m < k; ++m) out[m] = dot(g, basis[m]);
    return primitive_integer(out);
  };
  const std::size_t m_in = h.inequalities.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<IntegerVector> rows;
  std::vector<std::size_t> source;  // inequality index of each row
  RationalVector t_row(d + 1);
  t_row[0] = 1;
  rows.push_back(project(t_row));
  source.push_back(kNone);
  IncidenceSet vanishing(m_in);
  for (std::size_t i = 0; i < m_in; ++i) {
    const auto& ineq = h.inequalities[i];
    RationalVector g(d + 1);
    g[0] = ineq.bound;
    for (std::size_t j = 0; j < d; ++j) g[j + 1] = -ineq.coeffs[j];
    IntegerVector row = project(g);
    // Rows that vanish on the subspace carry no constraint.
    if (std::all_of(row.begin(), row.end(), [](const Integer& x) { return sgn(x) == 0; })) {
      vanishing.set(i);
      continue;
    }
    rows.push_back(std::move(row));
    source.push_back(i);
  }
  if (k == 1) {
    // Single homogeneous direction: the polytope is at most one point.
    VertexEnumeration out{VRepresentation{d, {}}, {}};
    RationalVector u = basis[0];
    if (sgn(u[0]) == 0) return out;
    for (auto& e : u) e /= basis[0][0];
    RationalVector p(u.begin() + 1, u.end());
    if (!h.contains(p)) return out;
    IncidenceSet tight(m_in);
    for (std::size_t i = 0; i < m_in; ++i)
      if (sgn(h.inequalities[i].slack(p)) == 0) tight.set(i);
    out.v.vertices.push_back(std::move(p));
    out.tight.push_back(std::move(tight));
    return out;
  }
  std::optional<IntegerVector> inside;
  if (interior && interior->size() == d) {
    // Coordinates of (1, interior) in the subspace basis.
    RationalMatrix a(d + 1, RationalVector(k));
    RationalVector rhs(d + 1);
    rhs[0] = 1;
    for (std::size_t j = 0; j < d; ++j) rhs[j + 1] = (*interior)[j];
    for (std::size_t j = 0; j <= d; ++j)
      for (std::size_t m = 0; m < k; ++m) a[j][m] = basis[m][j];
    if (auto sol = solve_affine(a, rhs, k); sol && sol->param_dim() == 0) inside = primitive_integer(sol->origin);
  }
  std::vector<ConeRay> rays = extreme_rays(rows, inside);
  std::vector<std::pair<RationalVector, IncidenceSet>> pts;
  for (const auto& ray : rays) {
    RationalVector x(d + 1);
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t j = 0; j <= d; ++j) x[j] += ray.direction[m] * basis[m][j];
    if (sgn(x[0]) <= 0) throw DegenerateCone("facets_to_vertices: polyhedron is unbounded");
    RationalVector p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = x[j + 1] / x[0];
    IncidenceSet tight = vanishing;
    for (auto r : ray.tight.members())
      if (source[r] != kNone) tight.set(source[r]);
    pts.emplace_back(std::move(p), std::move(tight));
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  VertexEnumeration out{VRepresentation{d, {}}, {}};
  for (auto& [p, t] : pts) {
    out.v.vertices.push_back(std::move(p));
    out.tight.push_back(std::move(t));
  }
  return out;
}

/// Vertices of a bounded H-polytope. Throws DegenerateCone when the region is
/// unbounded or empty in a way that leaves the homogenized cone non-pointed.
/// `interior`, a point strictly inside every inequality, lets the enumeration
/// insert constraints on demand.
inline VRepresentation facets_to_vertices(const HRepresentation& h,
                                          const std::optional<RationalVector>& interior = std::nullopt) {
  return enumerate_vertices(h, interior).v;
}

// --------------------------------------------------------------------------
// Linear programming over representations
// --------------------------------------------------------------------------

inline LinearProgram to_linear_program(const HRepresentation& h, const RationalVector& objective,
                                       Sense sense) {
  check_dimension(h);
  if (objective.size() != h.dimension) throw DimensionMismatch("objective of wrong dimension");
  LinearProgram lp;
  lp.num_vars = h.dimension;
  for (const auto& r : h.inequalities) lp.constraints.push_back({r.coeffs, Relation::LessEqual, r.bound});
  for (const auto& r : h.equalities) lp.constraints.push_back({r.coeffs, Relation::Equal, r.bound});
  lp.objective = objective;
  lp.sense = sense;
  return lp;
}

/// Exact optimum of `objective` over the H-polytope. Infeasible results carry
/// a Farkas multiplier over [inequalities..., equalities...].
inline LPResult lp_optimize(const HRepresentation& h, const RationalVector& objective, Sense sense) {
  return solve(to_linear_program(h, objective, sense));
}

struct HullOptimum {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  RationalVector point;
  RationalVector weights;
};

/// Optimizes over {sum_i w_i v_i : w >= 0, sum w = 1} intersected with
/// `equalities` (in point coordinates). The region is bounded, so the result
/// is Optimal or Infeasible.
inline HullOptimum optimize_over_hull(const VRepresentation& v,
                                      const std::vector<LinearInequality>& equalities,
                                      const RationalVector& objective, Sense sense) {
  const std::size_t n = v.vertices.size();
  if (objective.size() != v.dimension) throw DimensionMismatch("objective of wrong dimension");
  LinearProgram lp;
  lp.num_vars = n;
  lp.nonnegative.assign(n, true);
  Constraint norm{RationalVector(n, Rational(1)), Relation::Equal, Rational(1)};
  lp.constraints.push_back(std::move(norm));
  for (const auto& e : equalities) {
    if (e.coeffs.size() != v.dimension) throw DimensionMismatch("equality of wrong dimension");
    Constraint c;
    c.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = dot(e.coeffs, v.vertices[i]);
    c.relation = Relation::Equal;
    c.rhs = e.bound;
    lp.constraints.push_back(std::move(c));
  }
  lp.objective.resize(n);
  for (std::size_t i = 0; i < n; ++i) lp.objective[i] = dot(objective, v.vertices[i]);
  lp.sense = sense;
  LPResult r = solve(lp);
  HullOptimum out;
  out.status = r.status;
  if (r.status != LPStatus::Optimal) return out;
  out.value = r.value;
  out.weights = r.witness;
  out.point.assign(v.dimension, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(out.weights[i]) == 0) continue;
    for (std::size_t j = 0; j < v.dimension; ++j) out.point[j] += out.weights[i] * v.vertices[i][j];
  }
  return out;
}

struct Inside {
  RationalVector weights;  // convex weights over v.vertices
};

struct Outside {
  LinearInequality separator;  // valid on every vertex, violated by the point
};

using Membership = std::variant<Inside, Outside>;

inline Membership membership(const VRepresentation& v, const RationalVector& point) {
  if (point.size() != v.dimension) throw DimensionMismatch("membership: point of wrong dimension");
  const std::size_t n = v.vertices.size();
  const std::size_t d = v.dimension;
  LinearProgram lp;
  lp.num_vars = n;
  lp.nonnegative.assign(n, true);
  for (std::size_t j = 0; j < d; ++j) {
    Constraint c;
    c.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = v.vertices[i][j];
    c.relation = Relation::Equal;
    c.rhs = point[j];
    lp.constraints.push_back(std::move(c));
  }
  lp.constraints.push_back({RationalVector(n, Rational(1)), Relation::Equal, Rational(1)});
  lp.objective.assign(n, Rational(0));
  LPResult r = solve(lp);
  if (r.status == LPStatus::Optimal) return Inside{std::move(r.witness)};
  // y_c . v_i + y_n >= 0 for all vertices and y_c . p + y_n < 0.
  LinearInequality sep;
  sep.coeffs.assign(r.witness.begin(), r.witness.begin() + static_cast<std::ptrdiff_t>(d));
  for (auto& e : sep.coeffs) e = -e;
  sep.bound = r.witness[d];
  return Outside{canonical_inequality(sep)};
}

/// Max-norm distance from a point to conv(vertices), by LP.
inline Rational hull_distance(const VRepresentation& v, const RationalVector& point) {
  if (point.size() != v.dimension) throw DimensionMismatch("hull_distance: point of wrong dimension");
  const std::size_t n = v.vertices.size();
  const std::size_t d = v.dimension;
  // Variables: weights w (n), then eps; both nonnegative.
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.nonnegative.assign(n + 1, true);
  Constraint norm{RationalVector(n + 1, Rational(1)), Relation::Equal, Rational(1)};
  norm.coeffs[n] = 0;
  lp.constraints.push_back(std::move(norm));
  for (std::size_t j = 0; j < d; ++j) {
    Constraint up{RationalVector(n + 1), Relation::LessEqual, point[j]};
    Constraint down{RationalVector(n + 1), Relation::GreaterEqual, point[j]};
    for (std::size_t i = 0; i < n; ++i) up.coeffs[i] = down.coeffs[i] = v.vertices[i][j];
    up.coeffs[n] = -1;
    down.coeffs[n] = 1;
    lp.constraints.push_back(std::move(up));
    lp.constraints.push_back(std::move(down));
  }
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  lp.sense = Sense::Minimize;
  return solve(lp).value;
}

// --------------------------------------------------------------------------
// Redundancy removal and restriction
// --------------------------------------------------------------------------

struct IrredundantSystem {
  HRepresentation h;
  // For each kept inequality: a point satisfying every other constraint but
  // violating this one.
  std::vector<RationalVector> certificates;
};

namespace detail {

// Affine rank of a point set: rank of the homogenized points minus one.
inline std::size_t affine_rank(const std::vector<const RationalVector*>& pts) {
  if (pts.empty()) return 0;
  RationalMatrix m;
  m.reserve(pts.size());
  for (const auto* p : pts) {
    RationalVector row;
    row.reserve(p->size() + 1);
    row.push_back(1);
    row.insert(row.end(), p->begin(), p->end());
    m.push_back(std::move(row));
  }
  return rank(m) - 1;
}

struct FacetFilter {
  std::vector<LinearInequality> kept;
  std::vector<RationalVector> certificates;
};

// Keeps inequalities whose tight vertices span a facet of the polytope, one
// per facet, each with a point violating it and satisfying all other kept
// rows. Returns nullopt when the vertex route does not apply: unbounded or
// empty regions, and regions with implicit equalities among the inequalities.
inline std::optional<FacetFilter> facet_filter(const HRepresentation& h,
                                               const std::optional<RationalVector>& interior) {
  VertexEnumeration ve;
  try {
    ve = enumerate_vertices(h, interior);
  } catch (const DegenerateCone&) {
    return std::nullopt;
  }
  const auto& verts = ve.v.vertices;
  if (verts.empty()) return std::nullopt;
  std::vector<const RationalVector*> all;
  for (const auto& p : verts) all.push_back(&p);
  const std::size_t dim = affine_rank(all);
  RationalMatrix eq_rows;
  for (const auto& e : h.equalities) eq_rows.push_back(e.coeffs);
  if (dim == 0 || dim + rank(eq_rows) != h.dimension) return std::nullopt;

  RationalVector centre(h.dimension);
  for (const auto& p : verts)
    for (std::size_t j = 0; j < h.dimension; ++j) centre[j] += p[j];
  for (auto& c : centre) c /= static_cast<long>(verts.size());

  // Vertex sets of the inequalities; facets are exactly the maximal proper
  // ones, confirmed by their affine rank.
  const std::size_t m = h.inequalities.size();
  std::vector<IncidenceSet> on(m, IncidenceSet(verts.size()));
  for (std::size_t v = 0; v < verts.size(); ++v)
    for (auto i : ve.tight[v].members()) on[i].set(v);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t c = on[i].count();
    if (c >= dim && c < verts.size()) candidates.push_back(i);
  }
  FacetFilter out;
  std::vector<IncidenceSet> seen;
  std::vector<RationalVector> facet_centres;
  for (auto i : candidates) {
    bool maximal = true;
    for (auto j : candidates) {
      if (j != i && on[j].contains(on[i]) && !(on[i] == on[j])) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    if (std::find(seen.begin(), seen.end(), on[i]) != seen.end()) continue;
    std::vector<const RationalVector*> tight;
    for (auto v : on[i].members()) tight.push_back(&verts[v]);
    if (affine_rank(tight) + 1 != dim) continue;
    RationalVector fc(h.dimension);
    for (const auto* p : tight)
      for (std::size_t j = 0; j < h.dimension; ++j) fc[j] += (*p)[j];
    for (auto& c : fc) c /= static_cast<long>(tight.size());
    seen.push_back(on[i]);
    facet_centres.push_back(std::move(fc));
    out.kept.push_back(h.inequalities[i]);
  }
  // Push each facet centre slightly outwards, away from the vertex centroid.
  for (std::size_t k = 0; k < out.kept.size(); ++k) {
    const RationalVector& fc = facet_centres[k];
    RationalVector dir(h.dimension);
    for (std::size_t j = 0; j < h.dimension; ++j) dir[j] = fc[j] - centre[j];
    Rational step = 1;
    for (std::size_t j = 0; j < out.kept.size(); ++j) {
      if (j == k) continue;
      Rational rise = dot(out.kept[j].coeffs, dir);
      if (sgn(rise) <= 0) continue;
      Rational room = out.kept[j].slack(fc) / rise;
      if (room < step) step = room;
    }
    step /= 2;
    RationalVector cert = fc;
    for (std::size_t j = 0; j < h.dimension; ++j) cert[j] += step * dir[j];
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

}  // namespace detail

/// Canonicalizes, deduplicates and drops every inequality implied by the rest.
/// Bounded full-dimensional systems are reduced by vertex incidence (computed
/// with the same cone conversion); otherwise each inequality is tested by an
/// LP against the others. Either way every survivor comes with a certificate
/// point that violates it and satisfies all other kept constraints.
/// Equalities are reduced to an independent subset. `interior_hint`, a point
/// strictly inside every inequality, speeds up the vertex enumeration.
inline IrredundantSystem remove_redundant_certified(
    const HRepresentation& in, const std::optional<RationalVector>& interior_hint = std::nullopt) {
  check_dimension(in);
  HRepresentation h;
  h.dimension = in.dimension;

  std::vector<LinearInequality> eqs;
  for (const auto& e : in.equalities) {
    LinearInequality c = canonical_equality(e);
    if (c.is_trivial()) {
      if (sgn(c.bound) != 0) throw InconsistentEqualities("equality 0 = nonzero");
      continue;
    }
    eqs.push_back(std::move(c));
  }
  std::sort(eqs.begin(), eqs.end());
  eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
  RationalMatrix picked;
  for (auto& e : eqs) {
    RationalVector row = e.coeffs;
    row.push_back(e.bound);
    picked.push_back(std::move(row));
    if (rank(picked) == picked.size()) {
      h.equalities.push_back(e);
    } else {
      picked.pop_back();
    }
  }

  std::vector<LinearInequality> rows;
  for (const auto& r : in.inequalities) {
    LinearInequality c = canonical_inequality(r);
    if (c.is_trivial() && sgn(c.bound) >= 0) continue;
    rows.push_back(std::move(c));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  {
    HRepresentation probe = h;
    probe.inequalities = rows;
    std::optional<RationalVector> hint;
    if (interior_hint && interior_hint->size() == h.dimension) hint = interior_hint;
    if (auto filtered = detail::facet_filter(probe, hint)) {
      h.inequalities = std::move(filtered->kept);
      return IrredundantSystem{std::move(h), std::move(filtered->certificates)};
    }
  }

  IrredundantSystem out;
  std::vector<bool> alive(rows.size(), true);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    HRepresentation rest;
    rest.dimension = h.dimension;
    rest.equalities = h.equalities;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != k && alive[j]) rest.inequalities.push_back(rows[j]);
    LPResult r = lp_optimize(rest, rows[k].coeffs, Sense::Maximize);
    bool redundant = r.status == LPStatus::Infeasible ||
                     (r.status == LPStatus::Optimal && r.value <= rows[k].bound);
    if (redundant) {
      alive[k] = false;
      continue;
    }
    RationalVector cert = r.witness;
    if (r.status == LPStatus::Unbounded) {
      // Walk along the ray until the dropped inequality is violated.
      Rational gain = dot(rows[k].coeffs, r.ray);
      Rational step = (rows[k].bound - dot(rows[k].coeffs, cert)) / gain + 1;
      for (std::size_t j = 0; j < cert.size(); ++j) cert[j] += step * r.ray[j];
    }
    out.certificates.push_back(std::move(cert));
  }
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (alive[k]) h.inequalities.push_back(rows[k]);
  out.h = std::move(h);
  return out;
}

inline HRepresentation remove_redundant(const HRepresentation& h,
                                        const std::optional<RationalVector>& interior_hint = std::nullopt) {
  return remove_redundant_certified(h, interior_hint).h;
}

/// Substitutes p = basis(t) into every constraint of `h`, after checking that
/// `basis` parametrizes exactly the solution set of `equalities`, then removes
/// redundancy. The result lives in the basis parameters.
inline HRepresentation restrict_to_subspace(const HRepresentation& h,
                                            const std::vector<LinearInequality>& equalities,
                                            const AffineMap& basis,
                                            const std::optional<RationalVector>& interior_hint = std::nullopt) {
  check_dimension(h);
  const std::size_t d = h.dimension;
  RationalMatrix a;
  RationalVector b;
  for (const auto& e : equalities) {
    if (e.coeffs.size() != d) throw DimensionMismatch("equality of wrong dimension");
    a.push_back(e.coeffs);
    b.push_back(e.bound);
  }
  auto solution = solve_affine(a, b, d);
  if (!solution) throw InconsistentEqualities("restrict_to_subspace: equalities have no common solution");
  if (basis.ambient_dim() != d) throw DimensionMismatch("basis of wrong ambient dimension");
  for (const auto& e : equalities) {
    if (dot(e.coeffs, basis.origin) != e.bound)
      throw std::invalid_argument("restrict_to_subspace: basis origin violates an equality");
    for (const auto& dir : basis.directions)
      if (sgn(dot(e.coeffs, dir)) != 0)
        throw std::invalid_argument("restrict_to_subspace: basis direction leaves the subspace");
  }
  if (rank(basis.directions) != basis.param_dim() ||
      basis.param_dim() != solution->param_dim()) {
    throw std::invalid_argument("restrict_to_subspace: basis does not span the solution set");
  }

  auto substitute = [&](const LinearInequality& r) {
    LinearInequality out;
    out.coeffs.resize(basis.param_dim());
    for (std::size_t k = 0; k < basis.param_dim(); ++k) out.coeffs[k] = dot(r.coeffs, basis.directions[k]);
    out.bound = r.bound - dot(r.coeffs, basis.origin);
    return out;
  };
  HRepresentation sub;
  sub.dimension = basis.param_dim();
  for (const auto& r : h.inequalities) sub.inequalities.push_back(substitute(r));
  for (const auto& r : h.equalities) sub.equalities.push_back(substitute(r));
  try {
    return remove_redundant(sub, interior_hint);
  } catch (const InconsistentEqualities&) {
    throw InconsistentEqualities("restrict_to_subspace: subspace misses the polytope's affine hull");
  }
}

/// Uses the canonical parametrization of the equalities' solution set.
inline HRepresentation restrict_to_subspace(const HRepresentation& h,
                                            const std::vector<LinearInequality>& equalities) {
  RationalMatrix a;
  RationalVector b;
  for (const auto& e : equalities) {
    a.push_back(e.coeffs);
    b.push_back(e.bound);
  }
  auto solution = solve_affine(a, b, h.dimension);
  if (!solution) throw InconsistentEqualities("restrict_to_subspace: equalities have no common solution");
  return restrict_to_subspace(h, equalities, *solution);
}

struct InteriorCheck {
  bool full_dimensional = false;  // some point satisfies every inequality strictly
  Rational margin;                // largest uniform slack found (capped at 1)
  RationalVector point;
};

/// Decides whether the H-polytope has a point strictly inside every inequality.
inline InteriorCheck interior_point(const HRepresentation& h) {
  check_dimension(h);
  const std::size_t d = h.dimension;
  HRepresentation lifted;
  lifted.dimension = d + 1;
  for (const auto& r : h.inequalities) {
    LinearInequality l{r.coeffs, r.bound};
    l.coeffs.push_back(1);
    lifted.inequalities.push_back(std::move(l));
  }
  for (const auto& r : h.equalities) {
    LinearInequality l{r.coeffs, r.bound};
    l.coeffs.push_back(0);
    lifted.equalities.push_back(std::move(l));
  }
  RationalVector cap(d + 1);
  cap[d] = 1;
  lifted.inequalities.push_back({cap, Rational(1)});
  LPResult r = lp_optimize(lifted, cap, Sense::Maximize);
  InteriorCheck out;
  if (r.status != LPStatus::Optimal) return out;
  out.margin = r.value;
  out.full_dimensional = sgn(r.value) > 0;
  out.point.assign(r.witness.begin(), r.witness.begin() + static_cast<std::ptrdiff_t>(d));
  return out;
}

// --------------------------------------------------------------------------
// Text format
//
//   # optional comment lines
//   dim n
//   p/q p/q ... p/q            (vertex rows)
//   c1 ... cn <= b             (inequality rows)
//   c1 ... cn = b              (equality rows)
// --------------------------------------------------------------------------

inline void write_vrep(std::ostream& os, const VRepresentation& v,
                       const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "dim " << v.dimension << '\n';
  for (const auto& p : v.vertices) {
    for (std::size_t j = 0; j < p.size(); ++j) os << (j ? " " : "") << to_string(p[j]);
    os << '\n';
  }
}

inline void write_hrep(std::ostream& os, const HRepresentation& h,
                       const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "dim " << h.dimension << '\n';
  auto row = [&](const LinearInequality& r, const char* op) {
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) os << (j ? " " : "") << to_string(r.coeffs[j]);
    os << ' ' << op << ' ' << to_string(r.bound) << '\n';
  };
  for (const auto& e : h.equalities) row(e, "=");
  for (const auto& i : h.inequalities) row(i, "<=");
}

using Representation = std::variant<VRepresentation, HRepresentation>;

/// Reads either representation; rows containing "<=" or "=" make it an H-rep.
inline Representation read_representation(std::istream& is) {
  std::string line;
  std::optional<std::size_t> dim;
  VRepresentation v;
  HRepresentation h;
  bool any_h = false;
  bool any_v = false;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!dim) {
      std::string key;
      std::size_t n = 0;
      if (!(ls >> key >> n) || key != "dim") throw ParseError("expected 'dim n' header");
      dim = n;
      continue;
    }
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    auto op = std::find_if(tokens.begin(), tokens.end(),
                           [](const std::string& t) { return t == "<=" || t == "="; });
    if (op == tokens.end()) {
      if (tokens.size() != *dim) throw ParseError("vertex row has wrong length: " + line);
      RationalVector p;
      for (const auto& t : tokens) p.push_back(parse_rational(t));
      v.vertices.push_back(std::move(p));
      any_v = true;
    } else {
      if (static_cast<std::size_t>(op - tokens.begin()) != *dim || tokens.end() - op != 2)
        throw ParseError("malformed constraint row: " + line);
      LinearInequality r;
      for (auto it = tokens.begin(); it != op; ++it) r.coeffs.push_back(parse_rational(*it));
      r.bound = parse_rational(*(op + 1));
      (*op == "<=" ? h.inequalities : h.equalities).push_back(std::move(r));
      any_h = true;
    }
  }
  if (!dim) throw ParseError("missing 'dim n' header");
  if (any_h && any_v) throw ParseError("file mixes vertex and constraint rows");
  if (any_h) {
    h.dimension = *dim;
    return h;
  }
  return VRepresentation::from_points(*dim, std::move(v.vertices));
}

}  // namespace mdl
