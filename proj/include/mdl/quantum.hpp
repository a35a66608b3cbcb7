#pragma once

// Two-qubit pure states and projective measurements in double precision:
// Born-rule boxes for the (2,2,2,2) scenario, the golden Hardy-type setup,
// and a small measurement-angle search used for critical-parameter studies.

#include "mdl/catalog.hpp"
#include "mdl/physical_constraints.hpp"
#include "mdl/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mdl {

using Complex = std::complex<double>;
using Qubit = std::array<Complex, 2>;

class InvalidQuantumState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kNormTolerance = 1e-12;

/// Amplitudes in the order |00>, |01>, |10>, |11>.
class TwoQubitState {
 public:
  explicit TwoQubitState(std::array<Complex, 4> amplitudes) : amp_(amplitudes) {
    double n = 0;
    for (const auto& a : amp_) n += std::norm(a);
    if (std::abs(n - 1) > kNormTolerance) throw InvalidQuantumState("state is not normalized");
  }

  const std::array<Complex, 4>& amplitudes() const { return amp_; }

  /// cos(alpha)|00> + sin(alpha)|11>.
  static TwoQubitState schmidt(double alpha) {
    return TwoQubitState({Complex(std::cos(alpha)), 0, 0, Complex(std::sin(alpha))});
  }

  /// (|01> - |10>) / sqrt(2).
  static TwoQubitState singlet() {
    const double r = 1 / std::numbers::sqrt2;
    return TwoQubitState({0, Complex(r), Complex(-r), 0});
  }

  static TwoQubitState product(const Qubit& u, const Qubit& v) {
    return TwoQubitState({u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]});
  }

 private:
  std::array<Complex, 4> amp_;
};

/// Orthonormal basis of one qubit; outcome 0 first.
class Basis {
 public:
  Basis(Qubit zero, Qubit one) : v_{zero, one} {
    auto inner = [](const Qubit& a, const Qubit& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; };
    if (std::abs(inner(zero, zero) - 1.0) > kNormTolerance || std::abs(inner(one, one) - 1.0) > kNormTolerance ||
        std::abs(inner(zero, one)) > kNormTolerance) {
      throw InvalidQuantumState("measurement basis is not orthonormal");
    }
  }

  /// Outcome 0 along cos(t)|0> + sin(t)|1>.
  static Basis from_angle(double t) {
    return Basis({Complex(std::cos(t)), Complex(std::sin(t))}, {Complex(-std::sin(t)), Complex(std::cos(t))});
  }

  static Basis computational() { return from_angle(0); }

  const Qubit& operator[](int outcome) const { return v_[outcome]; }

 private:
  std::array<Qubit, 2> v_;
};

struct MeasurementSetup {
  std::array<Basis, 2> alice;  // indexed by x
  std::array<Basis, 2> bob;    // indexed by y

  static MeasurementSetup from_angles(double a0, double a1, double b0, double b1) {
    return {{Basis::from_angle(a0), Basis::from_angle(a1)}, {Basis::from_angle(b0), Basis::from_angle(b1)}};
  }
};

/// P(ab|xy) = |<A_x^a (x) B_y^b | psi>|^2 in the (a, b, x, y) index order.
inline std::vector<double> born_rule(const TwoQubitState& psi, const MeasurementSetup& m) {
  const Scenario s = Scenario::chsh();
  std::vector<double> p(s.size());
  const auto& amp = psi.amplitudes();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const Qubit& u = m.alice[x][a];
          const Qubit& v = m.bob[y][b];
          Complex z = 0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z += std::conj(u[i] * v[j]) * amp[2 * i + j];
          p[s.index(a, b, x, y)] = std::norm(z);
        }
      }
    }
  }
  return p;
}

/// Full probabilities q(xy) P(ab|xy) for a box and an input distribution
/// given in the order (00, 01, 10, 11).
inline std::vector<double> compose(const std::vector<double>& box, const std::array<double, 4>& inputs) {
  const Scenario s = Scenario::chsh();
  if (box.size() != static_cast<std::size_t>(s.size())) throw DimensionMismatch("expected 16 entries");
  double total = 0;
  for (double q : inputs) {
    if (!(q > 0)) throw InvalidDistribution("input distribution must be strictly positive");
    total += q;
  }
  if (std::abs(total - 1) > 1e-12) throw InvalidDistribution("input distribution must sum to 1");
  std::vector<double> out(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    auto [a, b, x, y] = s.unpack(i);
    out[i] = inputs[s.input_index(x, y)] * box[i];
  }
  return out;
}

inline constexpr std::array<double, 4> kUniformInputs = {0.25, 0.25, 0.25, 0.25};

/// Table-basis coordinates of a nonsignaling box.
inline std::vector<double> slice_coordinates(const std::vector<double>& box) {
  const Scenario s = Scenario::chsh();
  std::vector<double> t(TableBasis::kParams);
  for (int x = 0; x < 2; ++x) t[TableBasis::alice(x)] = box[s.index(0, 0, x, 0)] + box[s.index(0, 1, x, 0)];
  for (int y = 0; y < 2; ++y) t[TableBasis::bob(y)] = box[s.index(0, 0, 0, y)] + box[s.index(1, 0, 0, y)];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) t[TableBasis::joint(x, y)] = box[s.index(0, 0, x, y)];
  return t;
}

/// Largest violation of the nonsignaling equalities by a box.
inline double signaling_residual(const std::vector<double>& box) {
  auto full = compose(box, kUniformInputs);
  double worst = 0;
  for (const auto& e : nonsignaling_equalities(Scenario::chsh()).equalities) {
    double v = -e.bound.get_d();
    for (std::size_t i = 0; i < full.size(); ++i) v += e.coeffs[i].get_d() * full[i];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

/// The Hardy-type state ((sqrt5 - 1)|00> + (sqrt5 + 1)|11>) / (2 sqrt3) with
/// outcome-0 directions A0 = A(theta), A1 = A(theta - pi/4) and Bob's mirror
/// images B0 = A(-theta), B1 = A(pi/4 - theta), where
/// A(t) = cos t|0> + sin t|1> and theta = arccos sqrt(1/2 + 1/sqrt5).
struct GoldenSetup {
  TwoQubitState state;
  MeasurementSetup setup;
  double theta;
};

inline GoldenSetup golden_setup() {
  const double r5 = std::sqrt(5.0), r3 = std::sqrt(3.0);
  TwoQubitState psi({Complex((r5 - 1) / (2 * r3)), 0, 0, Complex((r5 + 1) / (2 * r3))});
  const double theta = std::acos(std::sqrt(0.5 + 1 / r5));
  const double q = std::numbers::pi / 4;
  return {psi, MeasurementSetup::from_angles(theta, theta - q, -theta, q - theta), theta};
}

/// Left-hand side of the golden inequality at the quantum point with input
/// distribution `inputs`.
inline double evaluate_mdl_violation(const TwoQubitState& psi, const MeasurementSetup& m, double l, double h,
                                     const std::array<double, 4>& inputs) {
  const Scenario s = Scenario::chsh();
  auto full = compose(born_rule(psi, m), inputs);
  return l * full[s.index(0, 0, 0, 0)] -
         h * (full[s.index(0, 1, 0, 1)] + full[s.index(1, 0, 1, 0)] + full[s.index(0, 0, 1, 1)]);
}

/// Singlet with measurement angles reaching CHSH = 2 sqrt2.
inline std::pair<TwoQubitState, MeasurementSetup> optimal_chsh_setup() {
  const double p = std::numbers::pi;
  return {TwoQubitState::singlet(), MeasurementSetup::from_angles(0, p / 4, p / 8 + p / 2, -p / 8 + p / 2)};
}

/// Real two-qubit strategy: Schmidt angle and four measurement angles.
struct RealStrategy {
  std::array<double, 5> params{};  // alpha, a0, a1, b0, b1

  TwoQubitState state() const { return TwoQubitState::schmidt(params[0]); }
  MeasurementSetup setup() const { return MeasurementSetup::from_angles(params[1], params[2], params[3], params[4]); }
  std::vector<double> box() const { return born_rule(state(), setup()); }
};

namespace detail {

// Nelder-Mead maximization over R^5.
inline std::pair<std::array<double, 5>, double> nelder_mead(
    const std::function<double(const std::array<double, 5>&)>& f, std::array<double, 5> start, double step,
    int iterations) {
  constexpr int n = 5;
  std::array<std::array<double, 5>, n + 1> pts;
  std::array<double, n + 1> val;
  for (int i = 0; i <= n; ++i) {
    pts[i] = start;
    if (i > 0) pts[i][i - 1] += step;
    val[i] = f(pts[i]);
  }
  for (int it = 0; it < iterations; ++it) {
    std::array<int, n + 1> order;
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] > val[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    std::array<double, 5> centre{};
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < n; ++j) centre[j] += pts[i][j] / n;
    }
    auto along = [&](double t) {
      std::array<double, 5> p;
      for (int j = 0; j < n; ++j) p[j] = centre[j] + t * (pts[worst][j] - centre[j]);
      return p;
    };
    auto refl = along(-1);
    double fr = f(refl);
    if (fr > val[best]) {
      auto exp = along(-2);
      double fe = f(exp);
      if (fe > fr) {
        pts[worst] = exp;
        val[worst] = fe;
      } else {
        pts[worst] = refl;
        val[worst] = fr;
      }
    } else if (fr > val[second]) {
      pts[worst] = refl;
      val[worst] = fr;
    } else {
      auto con = along(0.5);
      double fc = f(con);
      if (fc > val[worst]) {
        pts[worst] = con;
        val[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
          val[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (val[i] > val[best]) best = i;
  return {pts[best], val[best]};
}

}  // namespace detail

/// Maximizes `objective(box)` over real strategies by seeded random restarts
/// followed by simplex refinement.
inline std::pair<RealStrategy, double> search_real_strategy(const std::function<double(const std::vector<double>&)>& objective,
                                                            unsigned seed = 1, int restarts = 40,
                                                            int iterations = 600) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  auto f = [&](const std::array<double, 5>& p) { return objective(RealStrategy{p}.box()); };
  RealStrategy best;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::array<double, 5> start;
    for (auto& a : start) a = angle(rng);
    auto [p, v] = detail::nelder_mead(f, start, 0.3, iterations);
    // Restart from the result once to escape a collapsed simplex.
    auto [p2, v2] = detail::nelder_mead(f, p, 0.05, iterations);
    if (v2 > best_val) {
      best_val = v2;
      best = RealStrategy{p2};
    }
  }
  return {best, best_val};
}

/// Violations at or below this level are treated as floating-point noise.
inline constexpr double kViolationFloor = 1e-12;

/// Critical h of CHSH for a fixed box: the largest h at which CHSH(box)
/// exceeds the MDL bound 4 (1 - 2 max(0, 1 - 3h)).
inline CriticalPoint chsh_critical_h(const std::vector<double>& box, double tolerance = 1e-9) {
  const double value = chsh_value(box);
  auto violation = [value](double h) { return value - 4 * (1 - 2 * std::max(0.0, 1 - 3 * h)) - kViolationFloor; };
  return critical_h(violation, 0.25, 1.0 / 3.0, tolerance);
}

/// Critical h of a table family for a fixed box.
inline CriticalPoint family_critical_h(int family, const std::vector<double>& box, double tolerance = 1e-9) {
  const auto t = slice_coordinates(box);
  auto violation = [&](double h) { return evaluate_row(table1_row(family, h), t) - kViolationFloor; };
  return critical_h(violation, 0.25, 1.0 / 3.0, tolerance);
}

struct FamilyCriticalSearch {
  CriticalPoint critical;
  RealStrategy strategy;
};

/// Pushes the critical h of a family upwards: optimizes a real quantum
/// strategy for the family at a probe value of h, bisects with that strategy
/// fixed, and moves the probe halfway between the result and 1/3.
inline FamilyCriticalSearch search_family_critical_h(int family, double start_h = 0.27, int rounds = 12,
                                                     unsigned seed = 1) {
  FamilyCriticalSearch out;
  double probe = start_h;
  for (int r = 0; r < rounds; ++r) {
    auto objective = [&](const std::vector<double>& box) {
      return evaluate_row(table1_row(family, probe), slice_coordinates(box));
    };
    auto [strategy, value] = search_real_strategy(objective, seed + static_cast<unsigned>(r), 12, 500);
    if (!(value > kViolationFloor)) break;
    CriticalPoint c = family_critical_h(family, strategy.box());
    if (!c.violated) break;
    if (!out.critical.violated || c.h > out.critical.h) out = FamilyCriticalSearch{c, strategy};
    probe = out.critical.h + 0.5 * (1.0 / 3.0 - out.critical.h);
  }
  return out;
}

}  // namespace mdl
