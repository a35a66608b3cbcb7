#pragma once

// Nonsignaling and uniform-input equalities over full probabilities, and the
// Collins-Gisin style coordinates used to tabulate inequalities on the
// nonsignaling, uniform-input slice of the (2,2,2,2) scenario.

#include "mdl/linalg.hpp"
#include "mdl/polytope.hpp"
#include "mdl/rational.hpp"
#include "mdl/scenario.hpp"

#include <array>
#include <string>
#include <vector>

namespace mdl {

struct ConstraintSet {
  std::vector<LinearInequality> equalities;

  bool satisfied_by(const RationalVector& p) const {
    for (const auto& e : equalities)
      if (sgn(e.slack(p)) != 0) return false;
    return true;
  }

  friend ConstraintSet operator+(ConstraintSet a, const ConstraintSet& b) {
    a.equalities.insert(a.equalities.end(), b.equalities.begin(), b.equalities.end());
    return a;
  }
};

/// sum_{ab} P(abxy) = 1/(n_X n_Y) for every input pair.
inline ConstraintSet uniform_input_equalities(const Scenario& s) {
  ConstraintSet out;
  for (int x = 0; x < s.n_x; ++x) {
    for (int y = 0; y < s.n_y; ++y) {
      LinearInequality e{RationalVector(s.size()), Rational(1, s.inputs())};
      for (int a = 0; a < s.n_a; ++a)
        for (int b = 0; b < s.n_b; ++b) e.coeffs[s.index(a, b, x, y)] = 1;
      out.equalities.push_back(std::move(e));
    }
  }
  return out;
}

/// No-signaling with uniform inputs, linear in full probabilities:
/// sum_b P(abxy) = sum_b P(abxy') and sum_a P(abxy) = sum_a P(abx'y), for
/// every output and each pair of distinct inputs of the remote party.
inline ConstraintSet nonsignaling_equalities(const Scenario& s) {
  ConstraintSet out;
  for (int a = 0; a < s.n_a; ++a) {
    for (int x = 0; x < s.n_x; ++x) {
      for (int y = 0; y < s.n_y; ++y) {
        for (int y2 = y + 1; y2 < s.n_y; ++y2) {
          LinearInequality e{RationalVector(s.size()), Rational(0)};
          for (int b = 0; b < s.n_b; ++b) {
            e.coeffs[s.index(a, b, x, y)] += 1;
            e.coeffs[s.index(a, b, x, y2)] -= 1;
          }
          out.equalities.push_back(std::move(e));
        }
      }
    }
  }
  for (int b = 0; b < s.n_b; ++b) {
    for (int y = 0; y < s.n_y; ++y) {
      for (int x = 0; x < s.n_x; ++x) {
        for (int x2 = x + 1; x2 < s.n_x; ++x2) {
          LinearInequality e{RationalVector(s.size()), Rational(0)};
          for (int a = 0; a < s.n_a; ++a) {
            e.coeffs[s.index(a, b, x, y)] += 1;
            e.coeffs[s.index(a, b, x2, y)] -= 1;
          }
          out.equalities.push_back(std::move(e));
        }
      }
    }
  }
  return out;
}

inline ConstraintSet ns_uniform_constraints(const Scenario& s = Scenario::chsh()) {
  return nonsignaling_equalities(s) + uniform_input_equalities(s);
}

/// Affine coordinates of the nonsignaling, uniform-input slice of the 2222
/// full-probability space, in the column order
///   [1, PA(0|0), PA(0|1), PB(0|0), P(00|00), P(00|10), PB(0|1), P(00|01), P(00|11)]
/// where the leading "1" is the constant term of a tabulated inequality.
class TableBasis {
 public:
  static constexpr std::size_t kParams = 8;

  enum Coord : std::size_t {
    kAliceMarginal0 = 0,  // PA(0|x=0)
    kAliceMarginal1 = 1,  // PA(0|x=1)
    kBobMarginal0 = 2,    // PB(0|y=0)
    kJoint00 = 3,         // P(00|x=0,y=0)
    kJoint10 = 4,         // P(00|x=1,y=0)
    kBobMarginal1 = 5,    // PB(0|y=1)
    kJoint01 = 6,         // P(00|x=0,y=1)
    kJoint11 = 7,         // P(00|x=1,y=1)
  };

  static const std::array<std::string, kParams + 1>& labels() {
    static const std::array<std::string, kParams + 1> l = {
        "1",         "P_A(0|0)",  "P_A(0|1)", "P_B(0|0)", "P(00|00)",
        "P(00|10)",  "P_B(0|1)",  "P(00|01)", "P(00|11)"};
    return l;
  }

  static std::size_t joint(int x, int y) {
    static constexpr std::size_t idx[2][2] = {{kJoint00, kJoint01}, {kJoint10, kJoint11}};
    return idx[x][y];
  }
  static std::size_t alice(int x) { return x == 0 ? kAliceMarginal0 : kAliceMarginal1; }
  static std::size_t bob(int y) { return y == 0 ? kBobMarginal0 : kBobMarginal1; }

  /// Parametrization t -> full distribution with P(abxy) = P(ab|xy)/4.
  static const AffineMap& map() {
    static const AffineMap m = build_map();
    return m;
  }

  static RationalVector to_full(const RationalVector& t) { return map()(t); }

  /// Coordinates of a full-probability point on the slice.
  static RationalVector coordinates(const RationalVector& p) {
    const Scenario s = Scenario::chsh();
    RationalVector t(kParams);
    for (int x = 0; x < 2; ++x) t[alice(x)] = 4 * (p[s.index(0, 0, x, 0)] + p[s.index(0, 1, x, 0)]);
    for (int y = 0; y < 2; ++y) t[bob(y)] = 4 * (p[s.index(0, 0, 0, y)] + p[s.index(1, 0, 0, y)]);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) t[joint(x, y)] = 4 * p[s.index(0, 0, x, y)];
    return t;
  }

 private:
  static AffineMap build_map() {
    const Scenario s = Scenario::chsh();
    AffineMap m;
    m.origin.assign(s.size(), Rational(0));
    m.directions.assign(kParams, RationalVector(s.size()));
    const Rational q(1, 4);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        // P(00) = j, P(01) = A - j, P(10) = B - j, P(11) = 1 - A - B + j.
        m.origin[s.index(1, 1, x, y)] = q;
        auto j = joint(x, y), a = alice(x), b = bob(y);
        m.directions[j][s.index(0, 0, x, y)] += q;
        m.directions[a][s.index(0, 1, x, y)] += q;
        m.directions[j][s.index(0, 1, x, y)] -= q;
        m.directions[b][s.index(1, 0, x, y)] += q;
        m.directions[j][s.index(1, 0, x, y)] -= q;
        m.directions[a][s.index(1, 1, x, y)] -= q;
        m.directions[b][s.index(1, 1, x, y)] -= q;
        m.directions[j][s.index(1, 1, x, y)] += q;
      }
    }
    return m;
  }
};

/// PR box P(ab|xy) = 1/2 iff a + b = xy + alpha x + beta y + gamma (mod 2).
inline ConditionalDistribution pr_box(int alpha = 0, int beta = 0, int gamma = 0) {
  const Scenario s = Scenario::chsh();
  RationalVector p(s.size());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if ((a + b) % 2 == (x * y + alpha * x + beta * y + gamma) % 2) p[s.index(a, b, x, y)] = Rational(1, 2);
  return ConditionalDistribution(s, std::move(p));
}

/// The 24 vertices of the (2,2,2,2) nonsignaling polytope: 16 deterministic
/// boxes followed by the 8 PR boxes.
inline std::vector<ConditionalDistribution> nonsignaling_vertices() {
  const Scenario s = Scenario::chsh();
  std::vector<ConditionalDistribution> out;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
          const int fa[2] = {a0, a1}, fb[2] = {b0, b1};
          RationalVector p(s.size());
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) p[s.index(fa[x], fb[y], x, y)] = 1;
          out.emplace_back(s, std::move(p));
        }
  for (int alpha = 0; alpha < 2; ++alpha)
    for (int beta = 0; beta < 2; ++beta)
      for (int gamma = 0; gamma < 2; ++gamma) out.push_back(pr_box(alpha, beta, gamma));
  return out;
}

/// An inequality on the slice written as c0 + sum_i c_i t_i <= 0 in
/// TableBasis order (9 entries, constant first).
using TableRow = RationalVector;

/// Converts between a slice inequality c.t <= b and its 9-entry table row.
inline TableRow to_table_row(const LinearInequality& in_params) {
  TableRow row;
  row.push_back(-in_params.bound);
  row.insert(row.end(), in_params.coeffs.begin(), in_params.coeffs.end());
  return row;
}

inline LinearInequality from_table_row(const TableRow& row) {
  if (row.size() != TableBasis::kParams + 1) throw DimensionMismatch("table row must have 9 entries");
  LinearInequality out;
  out.bound = -row[0];
  out.coeffs.assign(row.begin() + 1, row.end());
  return out;
}

/// Rewrites an inequality over full probabilities in TableBasis coordinates
/// (exact substitution). `constraints` must cut out exactly the slice the
/// basis parametrizes.
inline LinearInequality to_table_basis(const LinearInequality& full, const ConstraintSet& constraints) {
  const AffineMap& m = TableBasis::map();
  if (full.coeffs.size() != m.ambient_dim()) throw DimensionMismatch("expected a 16-entry inequality");
  RationalMatrix a;
  RationalVector b;
  for (const auto& e : constraints.equalities) {
    if (e.coeffs.size() != m.ambient_dim()) throw DimensionMismatch("constraint of wrong dimension");
    a.push_back(e.coeffs);
    b.push_back(e.bound);
  }
  auto solution = solve_affine(a, b, m.ambient_dim());
  if (!solution) throw InconsistentEqualities("to_table_basis: constraints have no common solution");
  if (solution->param_dim() != TableBasis::kParams || !constraints.satisfied_by(m.origin)) {
    throw InconsistentEqualities("to_table_basis: constraints do not describe the table slice");
  }
  for (const auto& d : m.directions)
    for (const auto& e : constraints.equalities)
      if (sgn(dot(e.coeffs, d)) != 0)
        throw InconsistentEqualities("to_table_basis: constraints do not describe the table slice");
  LinearInequality out;
  out.coeffs.resize(TableBasis::kParams);
  for (std::size_t k = 0; k < TableBasis::kParams; ++k) out.coeffs[k] = dot(full.coeffs, m.directions[k]);
  out.bound = full.bound - dot(full.coeffs, m.origin);
  return out;
}

}  // namespace mdl
