#pragma once

// Named MDL inequalities: the golden (Hardy-type) inequality, CHSH and its
// MDL bound, and the seven h-dependent families on the nonsignaling,
// uniform-input slice. Also a bisection helper for critical parameters.

#include "mdl/mdl_model.hpp"
#include "mdl/physical_constraints.hpp"
#include "mdl/polytope.hpp"
#include "mdl/rational.hpp"
#include "mdl/scenario.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdl {

/// Left-hand side c.p - b of an inequality c.p <= b; positive means violated.
inline Rational evaluate(const LinearInequality& ineq, const RationalVector& p) {
  if (p.size() != ineq.coeffs.size()) throw DimensionMismatch("point and inequality dimensions differ");
  return dot(ineq.coeffs, p) - ineq.bound;
}

inline double evaluate(const LinearInequality& ineq, const std::vector<double>& p) {
  if (p.size() != ineq.coeffs.size()) throw DimensionMismatch("point and inequality dimensions differ");
  double s = -ineq.bound.get_d();
  for (std::size_t i = 0; i < p.size(); ++i) s += ineq.coeffs[i].get_d() * p[i];
  return s;
}

/// l P(0000) - h (P(0101) + P(1010) + P(0011)) <= 0 over full probabilities.
inline LinearInequality golden_inequality(const SourceBounds& b) {
  const Scenario& s = b.scenario;
  if (s.n_x < 2 || s.n_y < 2 || s.n_a < 2 || s.n_b < 2) {
    throw ScenarioMismatch("golden inequality needs binary inputs and outputs");
  }
  LinearInequality out{RationalVector(s.size()), Rational(0)};
  out.coeffs[s.index(0, 0, 0, 0)] = b.lower;
  out.coeffs[s.index(0, 1, 0, 1)] = -b.upper;
  out.coeffs[s.index(1, 0, 1, 0)] = -b.upper;
  out.coeffs[s.index(0, 0, 1, 1)] = -b.upper;
  return out;
}

/// Sign (-1)^(a + b + xy) of a CHSH term.
inline int chsh_sign(int a, int b, int x, int y) { return ((a + b + x * y) % 2 == 0) ? 1 : -1; }

/// CHSH = sum (-1)^(a+b+xy) P(ab|xy).
inline Rational chsh_value(const ConditionalDistribution& p) {
  const Scenario& s = p.scenario();
  if (!(s == Scenario::chsh())) throw ScenarioMismatch("CHSH is defined for (2,2,2,2)");
  Rational v = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) v += chsh_sign(a, b, x, y) * p.values()[s.index(a, b, x, y)];
  return v;
}

inline double chsh_value(const std::vector<double>& conditional) {
  const Scenario s = Scenario::chsh();
  if (conditional.size() != static_cast<std::size_t>(s.size())) throw DimensionMismatch("expected 16 entries");
  double v = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) v += chsh_sign(a, b, x, y) * conditional[s.index(a, b, x, y)];
  return v;
}

/// CHSH over full probabilities, sum (-1)^(a+b+xy) P(abxy). With uniform
/// inputs it equals CHSH / 4.
inline RationalVector chsh_full() {
  const Scenario s = Scenario::chsh();
  RationalVector c(s.size());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) c[s.index(a, b, x, y)] = chsh_sign(a, b, x, y);
  return c;
}

/// l' = max(l, 1 - 3h).
inline Rational effective_lower(const SourceBounds& b) {
  Rational alt = 1 - 3 * b.upper;
  return alt > b.lower ? alt : b.lower;
}

struct MdlChshBound {
  Rational l_prime;
  Rational conditional_bound;  // 4 (1 - 2 l')
  Rational full_bound;         // 1 - 2 l'
  std::vector<RationalVector> maximizers;  // MDL vertices attaining full_bound
  RationalVector witness;                  // their uniform mixture
  bool witness_nonsignaling = false;
  bool witness_uniform_inputs = false;
};

/// The MDL bound on CHSH under nonsignaling and uniform inputs, with the
/// uniform mixture of the CHSH-maximizing MDL vertices as a witness.
inline MdlChshBound mdl_chsh_bound(const SourceBounds& b) {
  if (!(b.scenario == Scenario::chsh())) throw InvalidBounds("the MDL CHSH bound is stated for (2,2,2,2)");
  MdlChshBound out;
  out.l_prime = effective_lower(b);
  out.full_bound = 1 - 2 * out.l_prime;
  out.conditional_bound = 4 * out.full_bound;

  const RationalVector c = chsh_full();
  VRepresentation v = mdl_vertices(b);
  Rational best;
  bool first = true;
  for (const auto& p : v.vertices) {
    Rational val = dot(c, p);
    if (first || val > best) {
      best = val;
      out.maximizers.clear();
      first = false;
    }
    if (val == best) out.maximizers.push_back(p);
  }
  out.witness.assign(c.size(), Rational(0));
  for (const auto& p : out.maximizers)
    for (std::size_t i = 0; i < p.size(); ++i) out.witness[i] += p[i];
  for (auto& e : out.witness) e /= static_cast<long>(out.maximizers.size());
  out.witness_nonsignaling = nonsignaling_equalities(b.scenario).satisfied_by(out.witness);
  out.witness_uniform_inputs = uniform_input_equalities(b.scenario).satisfied_by(out.witness);
  if (best != out.full_bound) {
    throw std::logic_error("CHSH vertex maximum " + to_string(best) + " differs from 1 - 2l' = " +
                           to_string(out.full_bound));
  }
  return out;
}

/// A polynomial in h with rational coefficients, constant term first.
struct Polynomial {
  std::vector<Rational> coeffs;

  Rational operator()(const Rational& h) const {
    Rational v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * h + *it;
    return v;
  }
  double operator()(double h) const {
    double v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * h + it->get_d();
    return v;
  }
};

inline constexpr int kTableFamilies = 7;

/// Rows of the h-dependent families on the slice, in TableBasis column
/// order [1, PA(0|0), PA(0|1), PB(0|0), P(00|00), P(00|10), PB(0|1),
/// P(00|01), P(00|11)]; each row means sum coefficient * term <= 0.
inline const std::array<std::array<Polynomial, TableBasis::kParams + 1>, kTableFamilies>& table_polynomials() {
  using P = Polynomial;
  auto q = [](long c0, long c1 = 0, long c2 = 0) { return P{{Rational(c0), Rational(c1), Rational(c2)}}; };
  static const std::array<std::array<Polynomial, TableBasis::kParams + 1>, kTableFamilies> rows = {{
      {q(2, -11, 12), q(-1, 2), q(-1, 4), q(-1, 2), q(0, 2), q(2, -6), q(-1, 4), q(2, -6), q(0, -2)},
      {q(2, -11, 12), q(-1, 4), q(-1, 3), q(-1, 4), q(0, -1), q(1, -3), q(-1, 3), q(1, -3), q(1, -3)},
      {q(1, -8, 11), q(-1, 5, -4), q(1, -4, 5), q(-1, 5, -4), q(1, -2, -3), q(0, -2, 3), q(1, -4, 5),
       q(0, -2, 3), q(-2, 9, -9)},
      {q(1, -7, 8), q(0, 0, 4), q(0), q(-1, 5, -4), q(0, -1), q(1, -3), q(0, 2, -4), q(0, -1), q(-1, 3)},
      {q(1, -8, 13), q(-1, 6, -8), q(0, 2, -5), q(0, 1, -1), q(0, -2, 5), q(0, -1, 1), q(0), q(1, -4, 3),
       q(-1, 4, -3)},
      {q(2, -13, 20), q(-1, 6, -8), q(-1, 5, -7), q(-1, 6, -8), q(0, -2, 5), q(1, -4, 3), q(-1, 5, -7),
       q(1, -4, 3), q(0, 1, -1)},
      {q(1, -4), q(-1, 3), q(0), q(-1, 3), q(1, -3), q(0, 1), q(0), q(0, 1), q(0, -1)},
  }};
  return rows;
}

/// Table row (9 entries, constant first) of family `index` (1..7) at h.
inline TableRow table1_row(int index, const Rational& h) {
  if (index < 1 || index > kTableFamilies) throw std::out_of_range("table family index must be 1..7");
  TableRow row;
  for (const auto& p : table_polynomials()[index - 1]) row.push_back(p(h));
  return row;
}

inline std::vector<double> table1_row(int index, double h) {
  if (index < 1 || index > kTableFamilies) throw std::out_of_range("table family index must be 1..7");
  std::vector<double> row;
  for (const auto& p : table_polynomials()[index - 1]) row.push_back(p(h));
  return row;
}

/// Family `index` at h as an inequality over the slice coordinates.
inline LinearInequality table1_family(int index, const Rational& h) { return from_table_row(table1_row(index, h)); }

/// Left-hand side of a table row at slice coordinates t (<= 0 is satisfied).
inline double evaluate_row(const std::vector<double>& row, const std::vector<double>& t) {
  if (row.size() != t.size() + 1) throw DimensionMismatch("table row and coordinates differ");
  double s = row[0];
  for (std::size_t k = 0; k < t.size(); ++k) s += row[k + 1] * t[k];
  return s;
}

struct CriticalPoint {
  bool violated = false;  // false: no violation anywhere in the interval
  double h = 0;           // largest h with a violation, to within `tolerance`
  double tolerance = 0;
};

/// Bisection for the largest h in [lo, hi] with violation(h) > 0, assuming
/// the violation set is an interval starting at lo.
inline CriticalPoint critical_h(const std::function<double(double)>& violation, double lo, double hi,
                                double tolerance = 1e-9) {
  CriticalPoint out;
  out.tolerance = tolerance;
  if (!(violation(lo) > 0)) return out;
  out.violated = true;
  if (violation(hi) > 0) {
    out.h = hi;
    return out;
  }
  double a = lo, b = hi;
  while (b - a > tolerance) {
    double m = 0.5 * (a + b);
    (violation(m) > 0 ? a : b) = m;
  }
  out.h = 0.5 * (a + b);
  return out;
}

}  // namespace mdl
