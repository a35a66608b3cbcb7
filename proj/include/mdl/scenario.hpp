#pragma once

// Bell scenarios and the exact distribution types shared by every module.
//
// Flat vectors over (a, b, x, y) are ordered lexicographically with `a`
// slowest and `y` fastest. Input distributions over (x, y) use the same rule.

#include "mdl/rational.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdl {

class ScenarioMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroInputProbability : public std::domain_error {
 public:
  ZeroInputProbability(int x, int y)
      : std::domain_error("input pair (" + std::to_string(x) + "," + std::to_string(y) +
                          ") has zero probability"),
        x_(x),
        y_(y) {}
  int x() const { return x_; }
  int y() const { return y_; }

 private:
  int x_;
  int y_;
};

struct Scenario {
  int n_x = 2;
  int n_y = 2;
  int n_a = 2;
  int n_b = 2;

  constexpr Scenario() = default;
  constexpr Scenario(int nx, int ny, int na, int nb) : n_x(nx), n_y(ny), n_a(na), n_b(nb) {
    if (nx < 1 || ny < 1 || na < 1 || nb < 1) {
      throw std::invalid_argument("scenario alphabet sizes must be positive");
    }
  }

  static constexpr Scenario chsh() { return Scenario{}; }

  constexpr int inputs() const { return n_x * n_y; }
  constexpr int outputs() const { return n_a * n_b; }
  constexpr int size() const { return inputs() * outputs(); }

  constexpr int index(int a, int b, int x, int y) const {
    return ((a * n_b + b) * n_x + x) * n_y + y;
  }
  constexpr int input_index(int x, int y) const { return x * n_y + y; }

  /// Inverse of index(): {a, b, x, y}.
  constexpr std::array<int, 4> unpack(int i) const {
    int y = i % n_y;
    i /= n_y;
    int x = i % n_x;
    i /= n_x;
    int b = i % n_b;
    int a = i / n_b;
    return {a, b, x, y};
  }

  friend constexpr bool operator==(const Scenario&, const Scenario&) = default;
};

inline std::string to_string(const Scenario& s) {
  return std::to_string(s.n_x) + std::to_string(s.n_y) + std::to_string(s.n_a) +
         std::to_string(s.n_b);
}

namespace detail {

inline void check_nonnegative(const RationalVector& v, const char* what) {
  for (const auto& e : v) {
    if (sgn(e) < 0) throw InvalidDistribution(std::string(what) + ": negative entry");
  }
}

}  // namespace detail

/// P(abxy) over the whole scenario.
class FullDistribution {
 public:
  FullDistribution(Scenario s, RationalVector p) : scenario_(s), p_(std::move(p)) {
    if (static_cast<int>(p_.size()) != s.size()) {
      throw InvalidDistribution("full distribution: wrong length");
    }
    detail::check_nonnegative(p_, "full distribution");
    Rational sum = 0;
    for (const auto& e : p_) sum += e;
    if (sum != 1) throw InvalidDistribution("full distribution: entries do not sum to 1");
  }

  const Scenario& scenario() const { return scenario_; }
  const RationalVector& values() const { return p_; }
  const Rational& operator()(int a, int b, int x, int y) const {
    return p_[scenario_.index(a, b, x, y)];
  }

  friend bool operator==(const FullDistribution&, const FullDistribution&) = default;

 private:
  Scenario scenario_;
  RationalVector p_;
};

/// P(ab|xy); each (x, y) slice is normalized.
class ConditionalDistribution {
 public:
  ConditionalDistribution(Scenario s, RationalVector p) : scenario_(s), p_(std::move(p)) {
    if (static_cast<int>(p_.size()) != s.size()) {
      throw InvalidDistribution("conditional distribution: wrong length");
    }
    detail::check_nonnegative(p_, "conditional distribution");
    for (int x = 0; x < s.n_x; ++x) {
      for (int y = 0; y < s.n_y; ++y) {
        Rational sum = 0;
        for (int a = 0; a < s.n_a; ++a)
          for (int b = 0; b < s.n_b; ++b) sum += p_[s.index(a, b, x, y)];
        if (sum != 1) {
          throw InvalidDistribution("conditional distribution: slice (" + std::to_string(x) +
                                    "," + std::to_string(y) + ") does not sum to 1");
        }
      }
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const RationalVector& values() const { return p_; }
  const Rational& operator()(int a, int b, int x, int y) const {
    return p_[scenario_.index(a, b, x, y)];
  }

  friend bool operator==(const ConditionalDistribution&, const ConditionalDistribution&) = default;

 private:
  Scenario scenario_;
  RationalVector p_;
};

/// P(xy), indexed by Scenario::input_index.
class InputDistribution {
 public:
  InputDistribution(Scenario s, RationalVector q) : scenario_(s), q_(std::move(q)) {
    if (static_cast<int>(q_.size()) != s.inputs()) {
      throw InvalidDistribution("input distribution: wrong length");
    }
    detail::check_nonnegative(q_, "input distribution");
    Rational sum = 0;
    for (const auto& e : q_) sum += e;
    if (sum != 1) throw InvalidDistribution("input distribution: entries do not sum to 1");
  }

  static InputDistribution uniform(Scenario s) {
    return InputDistribution(s, RationalVector(s.inputs(), Rational(1, s.inputs())));
  }

  const Scenario& scenario() const { return scenario_; }
  const RationalVector& values() const { return q_; }
  const Rational& operator()(int x, int y) const { return q_[scenario_.input_index(x, y)]; }

  friend bool operator==(const InputDistribution&, const InputDistribution&) = default;

 private:
  Scenario scenario_;
  RationalVector q_;
};

/// P(abxy) = q(xy) P(ab|xy).
inline FullDistribution compose(const InputDistribution& input,
                                const ConditionalDistribution& cond) {
  const Scenario& s = input.scenario();
  if (!(s == cond.scenario())) throw ScenarioMismatch("compose: scenarios differ");
  RationalVector p(s.size());
  for (int i = 0; i < s.size(); ++i) {
    auto [a, b, x, y] = s.unpack(i);
    p[i] = input(x, y) * cond.values()[i];
  }
  return FullDistribution(s, std::move(p));
}

inline InputDistribution marginalize_inputs(const FullDistribution& P) {
  const Scenario& s = P.scenario();
  RationalVector q(s.inputs());
  for (int i = 0; i < s.size(); ++i) {
    auto [a, b, x, y] = s.unpack(i);
    q[s.input_index(x, y)] += P.values()[i];
  }
  return InputDistribution(s, std::move(q));
}

/// Throws ZeroInputProbability for the first (x, y) with q(xy) = 0.
inline ConditionalDistribution condition_on_inputs(const FullDistribution& P) {
  const Scenario& s = P.scenario();
  InputDistribution q = marginalize_inputs(P);
  for (int x = 0; x < s.n_x; ++x)
    for (int y = 0; y < s.n_y; ++y)
      if (sgn(q(x, y)) == 0) throw ZeroInputProbability(x, y);
  RationalVector c(s.size());
  for (int i = 0; i < s.size(); ++i) {
    auto [a, b, x, y] = s.unpack(i);
    c[i] = P.values()[i] / q(x, y);
  }
  return ConditionalDistribution(s, std::move(c));
}

/// Convex combination sum_i w_i P_i; weights must be nonnegative and sum to 1.
inline FullDistribution mixture(const std::vector<FullDistribution>& parts,
                                const RationalVector& weights) {
  if (parts.empty() || parts.size() != weights.size()) {
    throw std::invalid_argument("mixture: parts and weights must be nonempty and equal length");
  }
  const Scenario& s = parts.front().scenario();
  RationalVector p(s.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!(parts[k].scenario() == s)) throw ScenarioMismatch("mixture: scenarios differ");
    for (int i = 0; i < s.size(); ++i) p[i] += weights[k] * parts[k].values()[i];
  }
  return FullDistribution(s, std::move(p));
}

}  // namespace mdl
