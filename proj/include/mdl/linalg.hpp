#pragma once

// Exact dense linear algebra over the rationals: row reduction, rank,
// null spaces and affine solution sets.

#include "mdl/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mdl {

using RationalMatrix = std::vector<RationalVector>;

struct RowEchelon {
  RationalMatrix rows;            // reduced rows, one per pivot
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form of `m` (rows of equal length `cols`).
inline RowEchelon reduced_row_echelon(RationalMatrix m, std::size_t cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& e : m[r]) e *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j) {
        if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  return reduced_row_echelon(m, m.front().size()).pivots.size();
}

/// Basis of {v : m v = 0}.
inline RationalMatrix null_space(const RationalMatrix& m, std::size_t cols) {
  RowEchelon e = reduced_row_echelon(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Affine parametrization x = origin + sum_k t_k directions[k].
struct AffineMap {
  RationalVector origin;
  RationalMatrix directions;

  std::size_t ambient_dim() const { return origin.size(); }
  std::size_t param_dim() const { return directions.size(); }

  RationalVector operator()(const RationalVector& t) const {
    if (t.size() != directions.size()) throw std::invalid_argument("AffineMap: wrong parameter count");
    RationalVector x = origin;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (sgn(t[k]) == 0) continue;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(directions[k][i]) != 0) x[i] += t[k] * directions[k][i];
      }
    }
    return x;
  }
};

/// Solution set of A x = b as an affine map, or nullopt when inconsistent.
/// Rows of `a` have length `cols`.
inline std::optional<AffineMap> solve_affine(const RationalMatrix& a, const RationalVector& b,
                                             std::size_t cols) {
  RationalMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  RowEchelon e = reduced_row_echelon(std::move(aug), cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  AffineMap map;
  map.origin.assign(cols, Rational(0));
  for (std::size_t i = 0; i < e.rows.size(); ++i) map.origin[e.pivots[i]] = e.rows[i][cols];
  for (auto& row : e.rows) row.pop_back();
  RationalMatrix reduced = std::move(e.rows);
  map.directions = null_space(reduced, cols);
  return map;
}

}  // namespace mdl
