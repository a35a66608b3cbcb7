#pragma once

// Double description method for pointed polyhedral cones in exact integer
// arithmetic. Given constraint rows g_1..g_N spanning R^k, computes the
// extreme rays of {a : g_i . a >= 0 for all i} together with the set of
// constraints each ray makes tight. Constraints are inserted in index order
// and adjacency uses the combinatorial test, so output is deterministic.

#include "mdl/linalg.hpp"
#include "mdl/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mdl {

/// Growable bitset; bits beyond the stored words read as zero.
class IncidenceSet {
 public:
  IncidenceSet() = default;
  explicit IncidenceSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) {
    if (i / 64 >= words_.size()) words_.resize(i / 64 + 1, 0);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  bool test(std::size_t i) const {
    return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1U);
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool contains(const IncidenceSet& other) const {
    const std::size_t m = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < m; ++i)
      if ((other.words_[i] & ~words_[i]) != 0) return false;
    for (std::size_t i = m; i < other.words_.size(); ++i)
      if (other.words_[i] != 0) return false;
    return true;
  }

  friend IncidenceSet operator&(const IncidenceSet& a, const IncidenceSet& b) {
    IncidenceSet r;
    const std::size_t m = std::min(a.words_.size(), b.words_.size());
    r.words_.resize(m);
    for (std::size_t i = 0; i < m; ++i) r.words_[i] = a.words_[i] & b.words_[i];
    return r;
  }

  static std::size_t intersection_count(const IncidenceSet& a, const IncidenceSet& b) {
    const std::size_t m = std::min(a.words_.size(), b.words_.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i) c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    return c;
  }

  /// True when this set contains a & b.
  bool contains_intersection(const IncidenceSet& a, const IncidenceSet& b) const {
    const std::size_t m = std::min(a.words_.size(), b.words_.size());
    const std::size_t own = std::min(m, words_.size());
    for (std::size_t i = 0; i < own; ++i)
      if ((a.words_[i] & b.words_[i] & ~words_[i]) != 0) return false;
    for (std::size_t i = own; i < m; ++i)
      if ((a.words_[i] & b.words_[i]) != 0) return false;
    return true;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const IncidenceSet& a, const IncidenceSet& b) {
    return a.contains(b) && b.contains(a);
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct ConeRay {
  IntegerVector direction;
  IncidenceSet tight;  // constraints with g_i . direction == 0
};

class DegenerateCone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Integer integer_dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

}  // namespace detail

namespace detail {

class ConeBuilder {
 public:
  ConeBuilder(const std::vector<IntegerVector>& rows, const std::vector<std::size_t>& initial)
      : rows_(rows), k_(rows.front().size()), inserted_(rows.size(), false) {
    for (auto i : initial) slot_of(i);
    RationalMatrix aug(k_, RationalVector(2 * k_));
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) aug[i][j] = rows_[initial[i]][j];
      aug[i][k_ + i] = 1;
    }
    RowEchelon e = reduced_row_echelon(std::move(aug), 2 * k_);
    for (std::size_t j = 0; j < k_; ++j) {
      RationalVector col(k_);
      for (std::size_t i = 0; i < k_; ++i) col[i] = e.rows[i][k_ + j];
      Entry ray{ConeRay{primitive_integer(col), IncidenceSet()}, false};
      for (std::size_t i = 0; i < k_; ++i)
        if (i != j) ray.ray.tight.set(i);
      rays_.push_back(std::move(ray));
    }
    for (auto i : initial) inserted_[i] = true;
  }

  bool inserted(std::size_t c) const { return inserted_[c]; }

  void insert(std::size_t c) {
    if (inserted_[c]) return;
    inserted_[c] = true;
    const std::size_t slot = slot_of(c);
    const IntegerVector& g = rows_[c];
    const std::size_t min_common = k_ >= 2 ? k_ - 2 : 0;
    std::vector<Integer> value(rays_.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      value[r] = integer_dot(g, rays_[r].ray.direction);
      int s = sgn(value[r]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays_.size(); ++r)
        if (sgn(value[r]) == 0) rays_[r].ray.tight.set(slot);
      return;
    }

    std::vector<Entry> fresh;
    for (auto p : pos) {
      for (auto q : neg) {
        const IncidenceSet& tp = rays_[p].ray.tight;
        const IncidenceSet& tq = rays_[q].ray.tight;
        if (IncidenceSet::intersection_count(tp, tq) < min_common) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays_.size() && adjacent; ++o) {
          if (o == p || o == q) continue;
          if (rays_[o].ray.tight.contains_intersection(tp, tq)) adjacent = false;
        }
        if (!adjacent) continue;
        IncidenceSet common = tp & tq;
        IntegerVector d(k_);
        const Integer& vp = value[p];
        const Integer& vq = value[q];
        for (std::size_t j = 0; j < k_; ++j)
          d[j] = vp * rays_[q].ray.direction[j] - vq * rays_[p].ray.direction[j];
        make_primitive(d);
        common.set(slot);
        fresh.push_back(Entry{ConeRay{std::move(d), std::move(common)}, false});
      }
    }

    std::vector<Entry> next;
    next.reserve(rays_.size() - neg.size() + fresh.size());
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      int s = sgn(value[r]);
      if (s < 0) continue;
      if (s == 0) rays_[r].ray.tight.set(slot);
      next.push_back(std::move(rays_[r]));
    }
    for (auto& f : fresh) next.push_back(std::move(f));
    rays_ = std::move(next);
  }

  /// Inserts rows until every ray satisfies every row. A violating ray is
  /// resolved by walking from `interior` towards it and inserting the rows
  /// crossed first, so mostly facet-defining rows enter the cone.
  void complete_from(const IntegerVector& interior) {
    const std::size_t n = rows_.size();
    std::vector<Integer> base(n);
    for (std::size_t j = 0; j < n; ++j) base[j] = integer_dot(rows_[j], interior);
    for (;;) {
      auto it = std::find_if(rays_.begin(), rays_.end(), [](const Entry& e) { return !e.checked; });
      if (it == rays_.end()) break;
      const IntegerVector dir = it->ray.direction;
      std::vector<std::size_t> first;
      Integer best_num, best_den;
      for (std::size_t j = 0; j < n; ++j) {
        if (inserted_[j]) continue;
        Integer v = integer_dot(rows_[j], dir);
        if (sgn(v) >= 0) continue;
        Integer den = -v;
        // Exit parameter base[j] / den; keep the minimal ones.
        if (first.empty()) {
          best_num = base[j];
          best_den = den;
          first.push_back(j);
          continue;
        }
        int cmp = sgn(Integer(base[j] * best_den - best_num * den));
        if (cmp < 0) {
          best_num = base[j];
          best_den = den;
          first.assign(1, j);
        } else if (cmp == 0) {
          first.push_back(j);
        }
      }
      if (first.empty()) {
        it->checked = true;
        continue;
      }
      for (auto j : first) insert(j);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (inserted_[j]) continue;
      inserted_[j] = true;
      const std::size_t slot = slot_of(j);
      for (auto& e : rays_)
        if (sgn(integer_dot(rows_[j], e.ray.direction)) == 0) e.ray.tight.set(slot);
    }
  }

  /// Final rays with incidences indexed by row.
  std::vector<ConeRay> take() {
    std::vector<ConeRay> out;
    out.reserve(rays_.size());
    for (auto& e : rays_) {
      IncidenceSet tight(rows_.size());
      for (auto sl : e.ray.tight.members()) tight.set(row_of_slot_[sl]);
      out.push_back(ConeRay{std::move(e.ray.direction), std::move(tight)});
    }
    std::sort(out.begin(), out.end(),
              [](const ConeRay& a, const ConeRay& b) { return a.direction < b.direction; });
    return out;
  }

 private:
  struct Entry {
    ConeRay ray;
    bool checked;
  };
  // Incidence bits are indexed by insertion slot so the sets stay as small
  // as the number of rows inserted so far.
  std::size_t slot_of(std::size_t row) {
    if (slot_.empty()) slot_.assign(rows_.size(), kNoSlot);
    if (slot_[row] == kNoSlot) {
      slot_[row] = row_of_slot_.size();
      row_of_slot_.push_back(row);
    }
    return slot_[row];
  }

  static constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);
  const std::vector<IntegerVector>& rows_;
  std::size_t k_;
  std::vector<std::size_t> slot_;
  std::vector<std::size_t> row_of_slot_;
  std::vector<bool> inserted_;
  std::vector<Entry> rays_;
};

inline std::vector<std::size_t> independent_rows(const std::vector<IntegerVector>& rows,
                                                 const std::vector<std::size_t>& order, std::size_t k) {
  std::vector<std::size_t> initial;
  RationalMatrix picked;
  for (std::size_t i : order) {
    if (initial.size() == k) break;
    picked.push_back(to_rational(rows[i]));
    if (rank(picked) == picked.size()) {
      initial.push_back(i);
    } else {
      picked.pop_back();
    }
  }
  if (initial.size() < k) throw DegenerateCone("extreme_rays: constraint rows do not span the space");
  return initial;
}

}  // namespace detail

/// Extreme rays of the cone {a in R^k : rows[i] . a >= 0}. The rows must span
/// R^k (the cone is then pointed); otherwise DegenerateCone is thrown.
///
/// Without `interior` the rows are inserted in index order. With a point
/// strictly inside every row, rows are inserted on demand (see
/// ConeBuilder::complete_from); the resulting rays and incidences are the same.
inline std::vector<ConeRay> extreme_rays(const std::vector<IntegerVector>& rows,
                                         const std::optional<IntegerVector>& interior = std::nullopt) {
  if (rows.empty()) throw DegenerateCone("extreme_rays: no constraints");
  const std::size_t k = rows.front().size();
  const std::size_t n = rows.size();

  bool lazy = interior.has_value() && interior->size() == k;
  std::vector<Rational> closeness(n);
  if (lazy) {
    for (std::size_t j = 0; j < n && lazy; ++j) {
      Integer v = detail::integer_dot(rows[j], *interior);
      if (sgn(v) <= 0) lazy = false;
      Integer norm = detail::integer_dot(rows[j], rows[j]);
      closeness[j] = Rational(v * v, norm);
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (lazy) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return closeness[a] < closeness[b]; });
  }
  detail::ConeBuilder cone(rows, detail::independent_rows(rows, order, k));
  if (lazy) {
    cone.complete_from(*interior);
  } else {
    for (std::size_t c = 0; c < n; ++c) cone.insert(c);
  }
  return cone.take();
}

}  // namespace mdl
