#pragma once

// Relabelings of a Bell scenario: input permutations, input-conditioned output
// permutations and the exchange of the two parties. Acts on flat vectors in the
// (a, b, x, y) index order and on inequalities, and sorts inequalities into
// families (orbits).

#include "mdl/linalg.hpp"
#include "mdl/physical_constraints.hpp"
#include "mdl/polytope.hpp"
#include "mdl/rational.hpp"
#include "mdl/scenario.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace mdl {

/// (a, b, x, y) -> (b', a', y', x') if party_swap else (a', b', x', y'), with
/// x' = input_perm_a[x], a' = output_perm_a[x][a] and likewise for Bob.
struct Relabeling {
  bool party_swap = false;
  std::vector<int> input_perm_a;
  std::vector<int> input_perm_b;
  std::vector<std::vector<int>> output_perm_a;  // indexed by Alice's input
  std::vector<std::vector<int>> output_perm_b;  // indexed by Bob's input

  static Relabeling identity(const Scenario& s) {
    Relabeling r;
    r.input_perm_a.resize(s.n_x);
    std::iota(r.input_perm_a.begin(), r.input_perm_a.end(), 0);
    r.input_perm_b.resize(s.n_y);
    std::iota(r.input_perm_b.begin(), r.input_perm_b.end(), 0);
    std::vector<int> ida(s.n_a), idb(s.n_b);
    std::iota(ida.begin(), ida.end(), 0);
    std::iota(idb.begin(), idb.end(), 0);
    r.output_perm_a.assign(s.n_x, ida);
    r.output_perm_b.assign(s.n_y, idb);
    return r;
  }

  friend bool operator==(const Relabeling&, const Relabeling&) = default;
};

/// Index permutation of a relabeling: entry i of a vector moves to perm[i].
inline std::vector<std::size_t> index_permutation(const Relabeling& r, const Scenario& s) {
  if (r.party_swap && (s.n_x != s.n_y || s.n_a != s.n_b)) {
    throw ScenarioMismatch("party exchange needs identical alphabets for both parties");
  }
  std::vector<std::size_t> perm(static_cast<std::size_t>(s.size()));
  for (int a = 0; a < s.n_a; ++a) {
    for (int b = 0; b < s.n_b; ++b) {
      for (int x = 0; x < s.n_x; ++x) {
        for (int y = 0; y < s.n_y; ++y) {
          int x2 = r.input_perm_a[x], y2 = r.input_perm_b[y];
          int a2 = r.output_perm_a[x][a], b2 = r.output_perm_b[y][b];
          std::size_t to = r.party_swap ? s.index(b2, a2, y2, x2) : s.index(a2, b2, x2, y2);
          perm[s.index(a, b, x, y)] = to;
        }
      }
    }
  }
  return perm;
}

namespace detail {

inline std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every choice of one permutation per input.
inline std::vector<std::vector<std::vector<int>>> per_input(int inputs, int outputs) {
  const auto base = permutations(outputs);
  std::vector<std::vector<std::vector<int>>> out{{}};
  for (int x = 0; x < inputs; ++x) {
    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& prefix : out) {
      for (const auto& p : base) {
        auto q = prefix;
        q.push_back(p);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// The full relabeling group; party exchange is included when both parties
/// have the same alphabets. Order 128 for (2,2,2,2).
inline std::vector<Relabeling> relabeling_group(const Scenario& s = Scenario::chsh()) {
  std::vector<bool> swaps{false};
  if (s.n_x == s.n_y && s.n_a == s.n_b) swaps.push_back(true);
  std::vector<Relabeling> out;
  for (bool sw : swaps)
    for (const auto& pa : detail::permutations(s.n_x))
      for (const auto& pb : detail::permutations(s.n_y))
        for (const auto& oa : detail::per_input(s.n_x, s.n_a))
          for (const auto& ob : detail::per_input(s.n_y, s.n_b)) out.push_back(Relabeling{sw, pa, pb, oa, ob});
  return out;
}

/// Relabels a flat vector: out[perm[i]] = v[i].
inline RationalVector apply(const Relabeling& r, const Scenario& s, const RationalVector& v) {
  if (v.size() != static_cast<std::size_t>(s.size())) throw DimensionMismatch("vector does not match scenario");
  auto perm = index_permutation(r, s);
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

inline FullDistribution apply(const Relabeling& r, const FullDistribution& p) {
  return FullDistribution(p.scenario(), apply(r, p.scenario(), p.values()));
}

inline ConditionalDistribution apply(const Relabeling& r, const ConditionalDistribution& p) {
  return ConditionalDistribution(p.scenario(), apply(r, p.scenario(), p.values()));
}

/// A group given as a list, with composition and inverses resolved through
/// the index permutations.
class RelabelingGroup {
 public:
  explicit RelabelingGroup(const Scenario& s = Scenario::chsh()) : scenario_(s), elements_(relabeling_group(s)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) lookup_[index_permutation(elements_[i], s)] = i;
  }

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Relabeling>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

  /// The relabeling performing `first`, then `second`.
  const Relabeling& compose(const Relabeling& first, const Relabeling& second) const {
    auto p1 = index_permutation(first, scenario_);
    auto p2 = index_permutation(second, scenario_);
    std::vector<std::size_t> p(p1.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = p2[p1[i]];
    return find(p);
  }

  const Relabeling& inverse(const Relabeling& r) const {
    auto p = index_permutation(r, scenario_);
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return find(inv);
  }

  const Relabeling& find(const std::vector<std::size_t>& perm) const {
    auto it = lookup_.find(perm);
    if (it == lookup_.end()) throw std::logic_error("permutation is not a relabeling");
    return elements_[it->second];
  }

 private:
  Scenario scenario_;
  std::vector<Relabeling> elements_;
  std::map<std::vector<std::size_t>, std::size_t> lookup_;
};

/// Maps an inequality to its image under a relabeling, in canonical form.
using InequalityAction = std::function<LinearInequality(const Relabeling&, const LinearInequality&)>;

/// Reduces an inequality modulo an equality system: coefficients on the
/// pivot columns of the reduced equalities are eliminated. Two inequalities
/// that agree on the affine subspace get the same normal form.
class EqualityReducer {
 public:
  EqualityReducer() = default;
  EqualityReducer(const std::vector<LinearInequality>& equalities, std::size_t dim) : dim_(dim) {
    RationalMatrix m;
    for (const auto& e : equalities) {
      if (e.coeffs.size() != dim) throw DimensionMismatch("equality of wrong dimension");
      RationalVector row = e.coeffs;
      row.push_back(e.bound);
      m.push_back(std::move(row));
    }
    echelon_ = reduced_row_echelon(std::move(m), dim);
  }

  LinearInequality operator()(LinearInequality in) const {
    for (std::size_t r = 0; r < echelon_.pivots.size(); ++r) {
      const std::size_t p = echelon_.pivots[r];
      if (p >= dim_) continue;
      Rational f = in.coeffs[p];
      if (sgn(f) == 0) continue;
      const auto& row = echelon_.rows[r];
      for (std::size_t j = 0; j < dim_; ++j) in.coeffs[j] -= f * row[j];
      in.bound -= f * row[dim_];
    }
    return canonical_inequality(in);
  }

 private:
  std::size_t dim_ = 0;
  RowEchelon echelon_;
};

/// Action on inequalities over flat (full or conditional) coordinates. The
/// image of c.p <= b is c'.p <= b with c'[perm[i]] = c[i], reduced modulo the
/// (relabeling-invariant) equalities.
inline InequalityAction flat_action(const Scenario& s, const std::vector<LinearInequality>& equalities = {}) {
  EqualityReducer reduce(equalities, static_cast<std::size_t>(s.size()));
  return [s, reduce](const Relabeling& r, const LinearInequality& in) {
    if (in.coeffs.size() != static_cast<std::size_t>(s.size())) throw DimensionMismatch("inequality does not match scenario");
    LinearInequality out{apply(r, s, in.coeffs), in.bound};
    return reduce(out);
  };
}

/// Affine map of slice coordinates induced by a relabeling:
/// t -> coordinates(r(to_full(t))).
inline AffineMap slice_map(const Relabeling& r) {
  const Scenario s = Scenario::chsh();
  const AffineMap& m = TableBasis::map();
  AffineMap out;
  out.origin = TableBasis::coordinates(apply(r, s, m.origin));
  for (const auto& d : m.directions) out.directions.push_back(TableBasis::coordinates(apply(r, s, d)));
  return out;
}

/// Action on inequalities over the TableBasis slice coordinates.
inline InequalityAction slice_action(const RelabelingGroup& group) {
  // Precompute the inverse maps: the image of c.t <= b under r is
  // c.(T_{r^-1}(t')) <= b.
  auto cache = std::make_shared<std::map<std::vector<std::size_t>, AffineMap>>();
  for (const auto& r : group.elements()) {
    (*cache)[index_permutation(r, group.scenario())] = slice_map(group.inverse(r));
  }
  Scenario s = group.scenario();
  return [cache, s](const Relabeling& r, const LinearInequality& in) {
    if (in.coeffs.size() != TableBasis::kParams) throw DimensionMismatch("expected an 8-coordinate inequality");
    const AffineMap& t = cache->at(index_permutation(r, s));
    LinearInequality out;
    out.coeffs.assign(TableBasis::kParams, Rational(0));
    for (std::size_t k = 0; k < TableBasis::kParams; ++k) {
      if (sgn(in.coeffs[k]) == 0) continue;
      for (std::size_t j = 0; j < TableBasis::kParams; ++j) out.coeffs[j] += in.coeffs[k] * t.directions[j][k];
    }
    out.bound = in.bound - dot(in.coeffs, t.origin);
    return canonical_inequality(out);
  };
}

/// All distinct images of an inequality, sorted.
inline std::vector<LinearInequality> orbit(const LinearInequality& ineq, const RelabelingGroup& group,
                                           const InequalityAction& act) {
  std::set<LinearInequality> seen;
  for (const auto& r : group.elements()) seen.insert(act(r, ineq));
  return {seen.begin(), seen.end()};
}

struct Family {
  LinearInequality representative;        // lexicographically smallest member
  std::vector<LinearInequality> members;  // members present in the input, sorted
  std::size_t orbit_size = 0;
};

/// Partitions inequalities into orbits. Families are ordered by
/// representative, so the result does not depend on the input order.
inline std::vector<Family> classify_families(const std::vector<LinearInequality>& ineqs,
                                             const RelabelingGroup& group, const InequalityAction& act) {
  std::map<LinearInequality, Family> by_rep;
  std::map<LinearInequality, LinearInequality> rep_of;
  for (const auto& raw : ineqs) {
    LinearInequality in = act(Relabeling::identity(group.scenario()), raw);
    auto known = rep_of.find(in);
    if (known == rep_of.end()) {
      auto members = orbit(in, group, act);
      const LinearInequality& rep = members.front();
      for (const auto& m : members) rep_of.emplace(m, rep);
      Family& f = by_rep[rep];
      f.representative = rep;
      f.orbit_size = members.size();
      known = rep_of.find(in);
    }
    by_rep[known->second].members.push_back(in);
  }
  std::vector<Family> out;
  for (auto& [rep, f] : by_rep) {
    std::sort(f.members.begin(), f.members.end());
    f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace mdl
