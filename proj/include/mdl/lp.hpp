#pragma once

// Exact rational linear programming: dense two-phase tableau simplex with
// Bland's rule. Problem sizes here are small (tens of variables, at most a few
// hundred rows), so clarity wins over sparse bookkeeping.

#include "mdl/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdl {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct Constraint {
  RationalVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> nonnegative;  // empty means every variable is free
  std::vector<Constraint> constraints;
  RationalVector objective;
  Sense sense = Sense::Maximize;

  bool is_nonnegative(std::size_t j) const { return !nonnegative.empty() && nonnegative[j]; }
};

/// Optimal: `witness` is an optimal point and `value` its objective.
/// Infeasible: `witness` is a Farkas multiplier y over the constraints
///   (y >= 0 on <= rows, y <= 0 on >= rows, free on = rows) with
///   y^T A = 0 on free variables, y^T A >= 0 on nonnegative ones and y^T b < 0.
/// Unbounded: `witness` is a feasible point and `ray` an improving direction.
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  RationalVector witness;
  RationalVector ray;
};

namespace detail {

class Tableau {
 public:
  // Rows: A z = b with b >= 0, z >= 0. `basis[i]` indexes the basic column of row i.
  std::vector<RationalVector> rows;
  RationalVector rhs;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c, RationalVector& cost, Rational& cost_value) {
    Rational inv = 1 / rows[r][c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(rows[r][j]) != 0) {
        rows[r][j] *= inv;
        nz.push_back(j);
      }
    }
    rhs[r] *= inv;
    auto eliminate = [&](RationalVector& row) -> Rational {
      Rational f = row[c];
      for (auto j : nz) row[j] -= f * rows[r][j];
      return f;
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && sgn(rows[i][c]) != 0) rhs[i] -= eliminate(rows[i]) * rhs[r];
    }
    // Objective = cost_value + sum_j cost[j] z_j over nonbasic columns.
    if (sgn(cost[c]) != 0) cost_value += eliminate(cost) * rhs[r];
    basis[r] = c;
  }

  // Maximizes with reduced costs `cost` (cost[j] > 0 means entering j improves).
  // Columns with allowed[j] == false never enter. Returns the unbounded column
  // if one is found.
  std::optional<std::size_t> run(RationalVector& cost, Rational& cost_value,
                                 const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (allowed[j] && sgn(cost[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return std::nullopt;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rhs[i] / rows[i][enter];
        if (leave == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows.size()) return enter;
      pivot(leave, enter, cost, cost_value);
    }
  }
};

// Core simplex; returns status plus primal point and unbounded ray.
inline LPResult simplex(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != n) throw std::invalid_argument("linear program: constraint length mismatch");
  if (lp.objective.size() != n) throw std::invalid_argument("linear program: objective length mismatch");

  // Column layout: structural (free vars get a +/- pair), then slacks, then artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = col++;
    if (!lp.is_nonnegative(j)) neg_col[j] = col++;
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.constraints[i].relation != Relation::Equal) slack_col[i] = col++;
  const std::size_t first_artificial = col;

  Tableau t;
  t.rows.assign(m, RationalVector());
  t.rhs.assign(m, Rational(0));
  t.basis.assign(m, SIZE_MAX);
  std::vector<bool> flipped(m, false);
  std::vector<std::size_t> artificial_rows;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    RationalVector row(first_artificial);
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(c.coeffs[j]) == 0) continue;
      row[pos_col[j]] = c.coeffs[j];
      if (neg_col[j] != SIZE_MAX) row[neg_col[j]] = -c.coeffs[j];
    }
    if (c.relation == Relation::LessEqual) row[slack_col[i]] = 1;
    if (c.relation == Relation::GreaterEqual) row[slack_col[i]] = -1;
    Rational b = c.rhs;
    if (sgn(b) < 0) {
      for (auto& e : row) e = -e;
      b = -b;
      flipped[i] = true;
    }
    if (slack_col[i] != SIZE_MAX && row[slack_col[i]] == 1) {
      t.basis[i] = slack_col[i];
    } else {
      artificial_rows.push_back(i);
    }
    t.rows[i] = std::move(row);
    t.rhs[i] = std::move(b);
  }
  col = first_artificial + artificial_rows.size();
  t.cols = col;
  for (auto& row : t.rows) row.resize(col);
  for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
    std::size_t i = artificial_rows[k];
    t.rows[i][first_artificial + k] = 1;
    t.basis[i] = first_artificial + k;
  }

  LPResult result;
  std::vector<bool> allowed(col, true);

  // Phase 1: maximize -(sum of artificials).
  if (!artificial_rows.empty()) {
    RationalVector cost(col);
    Rational value = 0;
    for (auto i : artificial_rows) {
      for (std::size_t j = 0; j < first_artificial; ++j) cost[j] += t.rows[i][j];
      value -= t.rhs[i];
    }
    // `value` tracks -(sum of artificials); cost holds reduced costs.
    t.run(cost, value, allowed);
    if (sgn(value) < 0) {
      result.status = LPStatus::Infeasible;
      return result;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t c = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(t.rows[i][j]) != 0) {
          c = j;
          break;
        }
      }
      if (c == first_artificial) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      Rational dummy = 0;
      RationalVector dummy_cost(col);
      t.pivot(i, c, dummy_cost, dummy);
      ++i;
    }
    for (std::size_t j = first_artificial; j < col; ++j) allowed[j] = false;
  }

  // Phase 2 in maximization form.
  RationalVector c_struct(col);
  for (std::size_t j = 0; j < n; ++j) {
    Rational cj = lp.sense == Sense::Maximize ? lp.objective[j] : Rational(-lp.objective[j]);
    c_struct[pos_col[j]] = cj;
    if (neg_col[j] != SIZE_MAX) c_struct[neg_col[j]] = -cj;
  }
  RationalVector cost = c_struct;
  Rational value = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Rational& cb = c_struct[t.basis[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < col; ++j)
      if (sgn(t.rows[i][j]) != 0) cost[j] -= cb * t.rows[i][j];
    value += cb * t.rhs[i];
  }
  auto unbounded = t.run(cost, value, allowed);

  auto extract = [&](const RationalVector& z) {
    RationalVector x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = z[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) x[j] -= z[neg_col[j]];
    }
    return x;
  };
  RationalVector z(col);
  for (std::size_t i = 0; i < t.rows.size(); ++i) z[t.basis[i]] = t.rhs[i];
  result.witness = extract(z);

  if (unbounded) {
    RationalVector d(col);
    d[*unbounded] = 1;
    for (std::size_t i = 0; i < t.rows.size(); ++i) d[t.basis[i]] = -t.rows[i][*unbounded];
    result.status = LPStatus::Unbounded;
    result.ray = extract(d);
    result.value = 0;
    return result;
  }
  result.status = LPStatus::Optimal;
  result.value = dot(lp.objective, result.witness);
  return result;
}

// Farkas alternative of an infeasible program. Always feasible by Farkas' lemma.
inline RationalVector farkas_certificate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  LinearProgram alt;
  alt.num_vars = m;
  alt.nonnegative.assign(m, false);
  // Solve with y' where y = s * y' and s = +1 for <=, -1 for >=; y' >= 0 for inequalities.
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.constraints[i].relation == Relation::LessEqual) alt.nonnegative[i] = true;
    if (lp.constraints[i].relation == Relation::GreaterEqual) {
      alt.nonnegative[i] = true;
      sign[i] = -1;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Constraint c;
    c.coeffs.resize(m);
    for (std::size_t i = 0; i < m; ++i) c.coeffs[i] = sign[i] * lp.constraints[i].coeffs[j];
    c.relation = lp.is_nonnegative(j) ? Relation::GreaterEqual : Relation::Equal;
    c.rhs = 0;
    alt.constraints.push_back(std::move(c));
  }
  Constraint norm;
  norm.coeffs.resize(m);
  for (std::size_t i = 0; i < m; ++i) norm.coeffs[i] = sign[i] * lp.constraints[i].rhs;
  norm.relation = Relation::Equal;
  norm.rhs = -1;
  alt.constraints.push_back(std::move(norm));
  alt.objective.assign(m, Rational(0));
  LPResult r = simplex(alt);
  if (r.status != LPStatus::Optimal) {
    throw std::logic_error("farkas_certificate: alternative system unexpectedly infeasible");
  }
  for (std::size_t i = 0; i < m; ++i) r.witness[i] *= sign[i];
  return r.witness;
}

}  // namespace detail

/// Checks a Farkas certificate exactly (see LPResult).
inline bool is_farkas_certificate(const LinearProgram& lp, const RationalVector& y) {
  if (y.size() != lp.constraints.size()) return false;
  Rational yb = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    switch (lp.constraints[i].relation) {
      case Relation::LessEqual: if (sgn(y[i]) < 0) return false; break;
      case Relation::GreaterEqual: if (sgn(y[i]) > 0) return false; break;
      case Relation::Equal: break;
    }
    yb += y[i] * lp.constraints[i].rhs;
  }
  if (sgn(yb) >= 0) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * lp.constraints[i].coeffs[j];
    if (lp.is_nonnegative(j) ? sgn(s) < 0 : sgn(s) != 0) return false;
  }
  return true;
}

inline LPResult solve(const LinearProgram& lp) {
  LPResult r = detail::simplex(lp);
  if (r.status == LPStatus::Infeasible) r.witness = detail::farkas_certificate(lp);
  return r;
}

}  // namespace mdl
