#pragma once

// The polytopes of measurement-dependent locality: the input polytope
// I(l, h) of input distributions bounded entrywise by l and h, the local
// (deterministic-strategy) polytope, and their vertex-wise product.

#include "mdl/polytope.hpp"
#include "mdl/rational.hpp"
#include "mdl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdl {

class InvalidBounds : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-input-pair bounds l <= P(xy|lambda) <= h on the hidden-variable-
/// conditioned input distribution.
struct SourceBounds {
  Rational lower;
  Rational upper;
  Scenario scenario;

  SourceBounds(Rational l, Rational h, Scenario s = Scenario::chsh())
      : lower(std::move(l)), upper(std::move(h)), scenario(s) {
    Rational u(1, s.inputs());
    if (sgn(lower) < 0 || lower > u || upper < u || upper > 1) {
      throw InvalidBounds("source bounds must satisfy 0 <= l <= 1/(n_X n_Y) <= h <= 1 (got l=" +
                          to_string(lower) + ", h=" + to_string(upper) + ")");
    }
  }
};

/// Lemma-style closed form: every vertex of I(l, h) is a permutation of
/// (h x n, l x (N-n-1), f) with n = floor((1 - N l)/(h - l)).
struct InputPattern {
  std::size_t count_h = 0;
  std::size_t count_l = 0;
  Rational f;
  bool degenerate = false;  // I(l, h) is the single uniform point
};

inline InputPattern input_pattern(const SourceBounds& b) {
  const int N = b.scenario.inputs();
  Rational u(1, N);
  InputPattern p;
  if (b.lower == u || b.upper == u) {
    p.degenerate = true;
    p.f = u;
    return p;
  }
  Rational ratio = (1 - N * b.lower) / (b.upper - b.lower);
  Integer n = floor(ratio);
  p.count_h = n.get_ui();
  p.count_l = static_cast<std::size_t>(N) - p.count_h - 1;
  p.f = 1 - Rational(n) * b.upper - Rational(static_cast<long>(p.count_l)) * b.lower;
  return p;
}

inline VRepresentation input_polytope_vertices(const SourceBounds& b) {
  const std::size_t N = static_cast<std::size_t>(b.scenario.inputs());
  InputPattern p = input_pattern(b);
  if (p.degenerate) return VRepresentation{N, {RationalVector(N, p.f)}};
  RationalVector pattern;
  pattern.insert(pattern.end(), p.count_h, b.upper);
  pattern.insert(pattern.end(), p.count_l, b.lower);
  pattern.push_back(p.f);
  std::sort(pattern.begin(), pattern.end());
  std::vector<RationalVector> perms;
  do {
    perms.push_back(pattern);
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return VRepresentation::from_points(N, std::move(perms));
}

/// Deterministic local strategy a = f_A(x), b = f_B(y).
struct DeterministicStrategy {
  std::vector<int> alice;  // indexed by x
  std::vector<int> bob;    // indexed by y

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

inline ConditionalDistribution to_conditional(const Scenario& s, const DeterministicStrategy& st) {
  RationalVector p(s.size());
  for (int x = 0; x < s.n_x; ++x)
    for (int y = 0; y < s.n_y; ++y) p[s.index(st.alice[x], st.bob[y], x, y)] = 1;
  return ConditionalDistribution(s, std::move(p));
}

struct LocalVertex {
  DeterministicStrategy strategy;
  ConditionalDistribution distribution;
};

/// All n_A^n_X * n_B^n_Y deterministic strategies, Alice's choice slowest and
/// within a party the lowest input slowest.
inline std::vector<LocalVertex> local_vertices(const Scenario& s) {
  auto functions = [](int inputs, int outputs) {
    std::vector<std::vector<int>> out;
    std::vector<int> f(inputs, 0);
    for (;;) {
      out.push_back(f);
      int i = inputs - 1;
      while (i >= 0 && f[i] == outputs - 1) f[i--] = 0;
      if (i < 0) break;
      ++f[i];
    }
    return out;
  };
  std::vector<LocalVertex> out;
  for (const auto& fa : functions(s.n_x, s.n_a)) {
    for (const auto& fb : functions(s.n_y, s.n_b)) {
      DeterministicStrategy st{fa, fb};
      out.push_back(LocalVertex{st, to_conditional(s, st)});
    }
  }
  return out;
}

/// Vertices V(abxy) = V(xy) V(ab|xy) over every input-polytope vertex and
/// deterministic strategy, deduplicated and sorted.
inline VRepresentation mdl_vertices(const SourceBounds& b) {
  const Scenario& s = b.scenario;
  VRepresentation in = input_polytope_vertices(b);
  std::vector<LocalVertex> loc = local_vertices(s);
  std::vector<RationalVector> pts;
  pts.reserve(in.vertices.size() * loc.size());
  for (const auto& q : in.vertices) {
    InputDistribution input(s, q);
    for (const auto& l : loc) pts.push_back(compose(input, l.distribution).values());
  }
  return VRepresentation::from_points(static_cast<std::size_t>(s.size()), std::move(pts));
}

/// Min-entropy source with H_min(XY|lambda) >= -log2(h): l = 0, upper bound h.
inline SourceBounds min_entropy_to_bounds(const Rational& h, const Scenario& s = Scenario::chsh()) {
  if (h < Rational(1, s.inputs())) {
    throw InvalidBounds("min-entropy bound exceeds log2(n_X n_Y): h = " + to_string(h));
  }
  return SourceBounds(Rational(0), h, s);
}

/// Overload on entropy in bits; 2^-H is rounded to a double, which is an
/// exact dyadic rational.
inline SourceBounds min_entropy_bits_to_bounds(double bits, const Scenario& s = Scenario::chsh()) {
  return min_entropy_to_bounds(Rational(std::exp2(-bits)), s);
}

/// Informational note on the regime the bounds fall in, if it is a boundary.
inline std::optional<std::string> boundary_note(const SourceBounds& b) {
  const int N = b.scenario.inputs();
  if (b.upper == Rational(1, N) || b.lower == Rational(1, N)) {
    return "input distribution is uniform for every strategy: standard Bell locality";
  }
  if (sgn(b.lower) == 0 && b.upper >= Rational(1, N - 1)) {
    return "an input pair can be excluded by the hidden strategy: every nonsignaling "
           "distribution with uniform inputs is reproducible";
  }
  return std::nullopt;
}

}  // namespace mdl
