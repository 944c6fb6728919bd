// Copyright 2026 The qinspect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QINSPECT_POLYTOPE_OPT_HPP_
#define QINSPECT_POLYTOPE_OPT_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qinspect/bilinear.hpp"
#include "qinspect/equilibrium.hpp"
#include "qinspect/errors.hpp"
#include "qinspect/game_model.hpp"
#include "qinspect/quantum_core.hpp"

namespace qinspect {

using Rational = boost::multiprecision::cpp_rational;
using RationalVec4 = std::array<Rational, 4>;

inline double ToDouble(const Rational& r) { return r.convert_to<double>(); }

// The rational with the shortest decimal expansion that round-trips to `x`,
// so 0.1 becomes 1/10 rather than its binary expansion.
inline Rational RationalFromDouble(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidParameters, "non-finite value");
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::scientific);
  std::string s(buf, res.ptr);
  const auto e_pos = s.find('e');
  std::string mantissa = s.substr(0, e_pos);
  int exponent = std::stoi(s.substr(e_pos + 1));
  const bool negative = !mantissa.empty() && mantissa[0] == '-';
  if (negative) mantissa.erase(0, 1);
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    exponent -= int(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  boost::multiprecision::cpp_int digits(mantissa);
  boost::multiprecision::cpp_int scale = 1;
  for (int i = 0; i < std::abs(exponent); ++i) scale *= 10;
  Rational r = exponent >= 0 ? Rational(digits * scale)
                             : Rational(digits, scale);
  return negative ? Rational(-r) : r;
}

// (|a|^2, |b|^2, |c|^2, |d|^2) held exactly.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  static ProbabilityVector Make(const RationalVec4& x) {
    Rational sum = 0;
    for (const Rational& xi : x) {
      if (xi < 0) {
        throw Error(ErrorKind::kInvalidState,
                    "probability vector has a negative entry");
      }
      sum += xi;
    }
    if (sum != 1) {
      throw Error(ErrorKind::kInvalidState,
                  "probability vector does not sum to 1");
    }
    ProbabilityVector v;
    v.x_ = x;
    return v;
  }

  static ProbabilityVector FromDoubles(const std::array<double, 4>& x) {
    return Make({RationalFromDouble(x[0]), RationalFromDouble(x[1]),
                 RationalFromDouble(x[2]), RationalFromDouble(x[3])});
  }

  const Rational& operator[](std::size_t i) const { return x_[i]; }
  const RationalVec4& values() const { return x_; }

  std::array<double, 4> ToDoubles() const {
    return {ToDouble(x_[0]), ToDouble(x_[1]), ToDouble(x_[2]),
            ToDouble(x_[3])};
  }

  friend bool operator==(const ProbabilityVector&,
                         const ProbabilityVector&) = default;

 private:
  RationalVec4 x_{};
};

inline Rational Dot(const RationalVec4& c, const RationalVec4& x) {
  return c[0] * x[0] + c[1] * x[1] + c[2] * x[2] + c[3] * x[3];
}

enum class Sense { kGreaterEqual, kEqual };

struct LinearConstraint {
  RationalVec4 coeffs{};
  Sense sense = Sense::kGreaterEqual;
  Rational rhs = 0;
  std::string label;

  bool SatisfiedBy(const RationalVec4& x) const {
    const Rational lhs = Dot(coeffs, x);
    return sense == Sense::kEqual ? lhs == rhs : lhs >= rhs;
  }
  bool TightAt(const RationalVec4& x) const { return Dot(coeffs, x) == rhs; }
  bool AllZero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const Rational& c) { return c == 0; });
  }
};

inline constexpr std::size_t kMaxConstraints = 16;

// maximize objective . x over {x in simplex : extra constraints}. The five
// simplex constraints occupy indices 0..4 (x_i >= 0, then sum x = 1).
class LinearProgram {
 public:
  LinearProgram(const RationalVec4& objective,
                std::vector<LinearConstraint> extra)
      : objective_(objective) {
    for (int i = 0; i < 4; ++i) {
      RationalVec4 e{};
      e[i] = 1;
      constraints_.push_back({e, Sense::kGreaterEqual, 0,
                              "x" + std::to_string(i + 1) + " >= 0"});
    }
    constraints_.push_back(
        {{1, 1, 1, 1}, Sense::kEqual, 1, "normalization"});
    for (auto& c : extra) {
      if (c.AllZero()) {
        throw Error(ErrorKind::kInvalidParameters,
                    "constraint '" + c.label + "' has no nonzero coefficient");
      }
      constraints_.push_back(std::move(c));
    }
    if (constraints_.size() > kMaxConstraints) {
      throw Error(ErrorKind::kInvalidParameters,
                  "too many constraints for exhaustive vertex enumeration");
    }
  }

  const RationalVec4& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }

  LinearProgram WithObjective(const RationalVec4& objective) const {
    LinearProgram copy = *this;
    copy.objective_ = objective;
    return copy;
  }

  bool IsFeasible(const RationalVec4& x) const {
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const LinearConstraint& c) { return c.SatisfiedBy(x); });
  }

  Rational Value(const RationalVec4& x) const { return Dot(objective_, x); }

  std::vector<std::size_t> ActiveAt(const RationalVec4& x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      if (constraints_[i].TightAt(x)) out.push_back(i);
    }
    return out;
  }

 private:
  RationalVec4 objective_{};
  std::vector<LinearConstraint> constraints_;
};

struct OptimizationResult {
  Rational optimum;
  ProbabilityVector witness;
  std::vector<std::size_t> active_constraints;
};

namespace internal {

// Exact Gauss-Jordan elimination on an augmented system with 4 unknowns.
// Returns the unique solution, or nothing if the rank is below 4 or the
// system is inconsistent. Works for any exact field type.
template <typename Field>
std::optional<std::array<Field, 4>> SolveExact(
    std::vector<std::array<Field, 5>> rows) {
  const std::size_t m = rows.size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 4 && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && rows[pivot][col] == 0) ++pivot;
    if (pivot == m) return std::nullopt;  // rank deficient in this column
    std::swap(rows[rank], rows[pivot]);
    const Field inv = Field(1) / rows[rank][col];
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Field f = rows[r][col];
      for (std::size_t k = col; k < 5; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  if (rank < 4) return std::nullopt;
  for (std::size_t r = rank; r < m; ++r) {
    if (rows[r][4] != 0) return std::nullopt;
  }
  return std::array<Field, 4>{rows[0][4], rows[1][4], rows[2][4], rows[3][4]};
}

template <typename Field>
std::size_t Rank(std::vector<std::array<Field, 5>> rows) {
  std::size_t rank = 0;
  const std::size_t m = rows.size();
  for (std::size_t col = 0; col < 4 && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && rows[pivot][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < m; ++r) {
      if (rows[r][col] == 0) continue;
      const Field f = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < 5; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::array<Rational, 5> Augmented(const LinearConstraint& c) {
  return {c.coeffs[0], c.coeffs[1], c.coeffs[2], c.coeffs[3], c.rhs};
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void ForEachSubset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace internal

// All vertices of the feasible polytope, sorted lexicographically. A vertex
// is the unique solution of all equalities plus enough tight inequalities to
// reach rank 4 that also satisfies every other constraint.
inline std::vector<ProbabilityVector> EnumerateVertices(
    const LinearProgram& program) {
  std::vector<std::array<Rational, 5>> eq_rows;
  std::vector<std::size_t> ineq;
  const auto& cons = program.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (cons[i].sense == Sense::kEqual) eq_rows.push_back(internal::Augmented(cons[i]));
    else ineq.push_back(i);
  }
  const std::size_t eq_rank = internal::Rank(eq_rows);
  const std::size_t need = 4 - std::min<std::size_t>(4, eq_rank);

  std::set<RationalVec4> found;
  internal::ForEachSubset(ineq.size(), need, [&](const std::vector<std::size_t>& pick) {
    auto rows = eq_rows;
    for (std::size_t k : pick) rows.push_back(internal::Augmented(cons[ineq[k]]));
    const auto sol = internal::SolveExact(std::move(rows));
    if (sol && program.IsFeasible(*sol)) found.insert(*sol);
  });
  if (found.empty()) {
    throw Error(ErrorKind::kInfeasibleProgram, "feasible region is empty");
  }
  std::vector<ProbabilityVector> out;
  out.reserve(found.size());
  for (const auto& v : found) out.push_back(ProbabilityVector::Make(v));
  return out;
}

namespace internal {

template <typename Better>
OptimizationResult OptimizeOverVertices(const LinearProgram& program,
                                        Better better) {
  const auto vertices = EnumerateVertices(program);
  const ProbabilityVector* best = &vertices.front();
  Rational best_value = program.Value(best->values());
  for (const auto& v : vertices) {
    const Rational val = program.Value(v.values());
    if (better(val, best_value)) {
      best = &v;
      best_value = val;
    }
  }
  return {best_value, *best, program.ActiveAt(best->values())};
}

}  // namespace internal

// A linear objective attains its maximum over a polytope at a vertex. The
// witness is the lexicographically first optimal vertex.
inline OptimizationResult MaximizeLinear(const LinearProgram& program) {
  return internal::OptimizeOverVertices(
      program, [](const Rational& a, const Rational& b) { return a > b; });
}

inline OptimizationResult MinimizeLinear(const LinearProgram& program) {
  return internal::OptimizeOverVertices(
      program, [](const Rational& a, const Rational& b) { return a < b; });
}

enum class Target { kA, kB, kJoint };

inline const char* TargetName(Target t) {
  switch (t) {
    case Target::kA: return "A";
    case Target::kB: return "B";
    case Target::kJoint: return "joint";
  }
  return "?";
}

// The bilinear payoff coefficients as linear functions of the outcome
// probabilities, exactly.
struct LinearizedGame {
  // element i holds the coefficients obtained for x = e_i
  std::array<BasicBilinearPayoff<Rational>, 4> a;
  std::array<BasicBilinearPayoff<Rational>, 4> b;

  explicit LinearizedGame(const PayoffMatrix2x2& matrix) {
    RationalVec4 da, db;
    for (int i = 0; i < 4; ++i) {
      da[i] = RationalFromDouble(matrix.Cell(i).a);
      db[i] = RationalFromDouble(matrix.Cell(i).b);
    }
    for (int i = 0; i < 4; ++i) {
      RationalVec4 e{};
      e[i] = 1;
      a[i] = BilinearFromProbabilities(da, e);
      b[i] = BilinearFromProbabilities(db, e);
    }
  }

  template <typename F>
  static RationalVec4 Map(F&& f) {
    return {f(0), f(1), f(2), f(3)};
  }

  RationalVec4 PayoffAt(Target target, const Rational& p,
                        const Rational& q) const {
    return Map([&](int i) {
      const Rational va = a[i].Evaluate(p, q);
      const Rational vb = b[i].Evaluate(p, q);
      return target == Target::kA ? va : target == Target::kB ? vb : va + vb;
    });
  }

  // Coefficients of A's incentive line alpha_A q + beta_A in x.
  RationalVec4 SlopeA(const Rational& q) const {
    return Map([&](int i) { return a[i].SlopeInP(q); });
  }
  RationalVec4 SlopeB(const Rational& p) const {
    return Map([&](int i) { return b[i].SlopeInQ(p); });
  }
};

namespace internal {

inline RationalVec4 Negate(RationalVec4 v) {
  for (auto& x : v) x = -x;
  return v;
}

// Appends `coeffs . x >= 0` (or == 0), dropping rows that vanish
// identically. Returns false if such a row can never be satisfied.
inline bool AppendHomogeneous(std::vector<LinearConstraint>& out,
                              const RationalVec4& coeffs, Sense sense,
                              std::string label) {
  LinearConstraint c{coeffs, sense, 0, std::move(label)};
  if (c.AllZero()) return true;
  out.push_back(std::move(c));
  return true;
}

inline bool AppendFloor(std::vector<LinearConstraint>& out,
                        const RationalVec4& coeffs, const Rational& floor,
                        std::string label) {
  LinearConstraint c{coeffs, Sense::kGreaterEqual, floor, std::move(label)};
  if (c.AllZero()) return floor <= 0;
  out.push_back(std::move(c));
  return true;
}

}  // namespace internal

// Conditions on x for `corner` to be an equilibrium, derived from the
// matrix: neither player gains by moving off their pure strategy.
inline std::vector<LinearConstraint> CornerConstraints(
    const PayoffMatrix2x2& matrix, Corner corner) {
  const LinearizedGame game(matrix);
  const Rational p = corner.p;
  const Rational q = corner.q;
  std::vector<LinearConstraint> out;
  const RationalVec4 la = game.SlopeA(q);
  const RationalVec4 lb = game.SlopeB(p);
  internal::AppendHomogeneous(out, corner.p == 1 ? la : internal::Negate(la),
                              Sense::kGreaterEqual,
                              "A keeps p=" + std::to_string(corner.p));
  internal::AppendHomogeneous(out, corner.q == 1 ? lb : internal::Negate(lb),
                              Sense::kGreaterEqual,
                              "B keeps q=" + std::to_string(corner.q));
  return out;
}

struct RationalRange {
  Rational min;
  Rational max;
};

inline RationalRange PayoffRangeForCorner(const PayoffMatrix2x2& matrix,
                                          Corner corner, Target target) {
  const LinearizedGame game(matrix);
  const LinearProgram program(game.PayoffAt(target, corner.p, corner.q),
                              CornerConstraints(matrix, corner));
  return {MinimizeLinear(program).optimum, MaximizeLinear(program).optimum};
}

inline LinearProgram ParetoProgram(const PayoffMatrix2x2& matrix, Corner corner,
                                   const Rational& floor_a,
                                   const Rational& floor_b) {
  const LinearizedGame game(matrix);
  auto cons = CornerConstraints(matrix, corner);
  const bool ok =
      internal::AppendFloor(cons, game.PayoffAt(Target::kA, corner.p, corner.q),
                            floor_a, "A payoff floor") &&
      internal::AppendFloor(cons, game.PayoffAt(Target::kB, corner.p, corner.q),
                            floor_b, "B payoff floor");
  if (!ok) {
    throw Error(ErrorKind::kInfeasibleProgram,
                "payoff floor unreachable for constant payoff");
  }
  return LinearProgram(game.PayoffAt(Target::kJoint, corner.p, corner.q),
                       std::move(cons));
}

// Largest joint payoff at `corner` over states that make it an equilibrium
// and give each player at least their floor.
inline OptimizationResult ParetoImprovementMax(const PayoffMatrix2x2& matrix,
                                               Corner corner,
                                               const Rational& floor_a,
                                               const Rational& floor_b) {
  return MaximizeLinear(ParetoProgram(matrix, corner, floor_a, floor_b));
}

// Equilibria of the form (t,0), (t,1), (0,t), (1,t) with t strictly inside
// (0,1): the mixing player is indifferent on that edge.
enum class EdgeFamily { kPMixQ0, kPMixQ1, kP0QMix, kP1QMix };

inline constexpr std::array<EdgeFamily, 4> kEdgeFamilies = {
    EdgeFamily::kPMixQ0, EdgeFamily::kPMixQ1, EdgeFamily::kP0QMix,
    EdgeFamily::kP1QMix};

inline const char* EdgeFamilyName(EdgeFamily f) {
  switch (f) {
    case EdgeFamily::kPMixQ0: return "(p*,0)";
    case EdgeFamily::kPMixQ1: return "(p*,1)";
    case EdgeFamily::kP0QMix: return "(0,q*)";
    case EdgeFamily::kP1QMix: return "(1,q*)";
  }
  return "?";
}

struct EdgeParetoResult {
  EdgeFamily family;
  bool feasible = false;
  Rational best_joint;
  Rational mix;  // the mixing probability attaining it
  ProbabilityVector witness;
};

// For each rational mix t = k/grid (0 < k < grid), maximizes the joint
// payoff at the edge profile over states for which it is an equilibrium
// meeting both floors. Each t is an exact LP; the scan is over t only.
inline EdgeParetoResult EdgeParetoScan(const PayoffMatrix2x2& matrix,
                                       EdgeFamily family,
                                       const Rational& floor_a,
                                       const Rational& floor_b, int grid) {
  const LinearizedGame game(matrix);
  EdgeParetoResult result;
  result.family = family;
  for (int k = 1; k < grid; ++k) {
    const Rational t(k, grid);
    Rational p, q;
    RationalVec4 indifferent, stay;
    switch (family) {
      case EdgeFamily::kPMixQ0:
        p = t, q = 0;
        indifferent = game.SlopeA(q);
        stay = internal::Negate(game.SlopeB(p));
        break;
      case EdgeFamily::kPMixQ1:
        p = t, q = 1;
        indifferent = game.SlopeA(q);
        stay = game.SlopeB(p);
        break;
      case EdgeFamily::kP0QMix:
        p = 0, q = t;
        indifferent = game.SlopeB(p);
        stay = internal::Negate(game.SlopeA(q));
        break;
      case EdgeFamily::kP1QMix:
        p = 1, q = t;
        indifferent = game.SlopeB(p);
        stay = game.SlopeA(q);
        break;
    }
    std::vector<LinearConstraint> cons;
    internal::AppendHomogeneous(cons, indifferent, Sense::kEqual, "indifference");
    internal::AppendHomogeneous(cons, stay, Sense::kGreaterEqual, "edge optimality");
    if (!internal::AppendFloor(cons, game.PayoffAt(Target::kA, p, q), floor_a,
                               "A payoff floor") ||
        !internal::AppendFloor(cons, game.PayoffAt(Target::kB, p, q), floor_b,
                               "B payoff floor")) {
      continue;
    }
    try {
      const LinearProgram program(game.PayoffAt(Target::kJoint, p, q),
                                  std::move(cons));
      const OptimizationResult r = MaximizeLinear(program);
      if (!result.feasible || r.optimum > result.best_joint) {
        result.feasible = true;
        result.best_joint = r.optimum;
        result.mix = t;
        result.witness = r.witness;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasibleProgram) throw;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Interior equilibria: payoffs are rational functions of x, so their ranges
// are estimated numerically.

struct InteriorPoint {
  StrategyProfile ne;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  double Joint() const { return payoff_a + payoff_b; }
};

inline constexpr double kInteriorDenominatorTolerance = 1e-12;

// The equilibrium where both incentive lines cross inside (0,1)^2, if any.
inline std::optional<InteriorPoint> InteriorEquilibriumAt(
    const PayoffMatrix2x2& matrix, const std::array<double, 4>& x) {
  const BilinearPayoff pa = BilinearFromProbabilities(matrix.Diagonal(Player::kA), x);
  const BilinearPayoff pb = BilinearFromProbabilities(matrix.Diagonal(Player::kB), x);
  if (std::abs(pa.alpha) <= kInteriorDenominatorTolerance ||
      std::abs(pb.alpha) <= kInteriorDenominatorTolerance) {
    return std::nullopt;
  }
  const double q = -pa.beta / pa.alpha;
  const double p = -pb.gamma / pb.alpha;
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) return std::nullopt;
  return InteriorPoint{{p, q}, pa.Evaluate(p, q), pb.Evaluate(p, q)};
}

struct RangeEstimate {
  double lo = 0.0;
  double hi = 0.0;
  std::array<double, 4> lo_state{};
  std::array<double, 4> hi_state{};
};

struct InteriorRangeResult {
  RangeEstimate a;
  RangeEstimate b;
  RangeEstimate joint;
  std::size_t samples = 0;
  std::size_t feasible_samples = 0;
  // Largest joint payoff seen among interior-equilibrium states whose
  // payoffs meet both floors (within 1e-9), if any such state was seen.
  std::optional<double> floored_joint_max;
  std::array<double, 4> floored_joint_state{};
  std::string note;
};

struct InteriorRangeOptions {
  std::size_t samples = 100000;
  int refinement_steps = 200;
  std::uint64_t seed = 20150101;
  double floor_a = 16.0;
  double floor_b = 5.0;
};

namespace internal {

// Uniform double in [0,1) from the top 53 bits; independent of the
// standard library's distribution implementations.
inline double Unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Maps uniforms to a point of the simplex face spanned by `support`.
inline std::array<double, 4> SimplexPoint(const std::array<double, 4>& u,
                                          const std::array<bool, 4>& support) {
  std::array<double, 4> x{};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!support[i]) continue;
    x[i] = -std::log(1.0 - u[i]);
    sum += x[i];
  }
  for (auto& xi : x) xi /= sum;
  return x;
}

using Objective = double (*)(const InteriorPoint&);

inline double ObjA(const InteriorPoint& ip) { return ip.payoff_a; }
inline double ObjB(const InteriorPoint& ip) { return ip.payoff_b; }
inline double ObjJoint(const InteriorPoint& ip) { return ip.Joint(); }

// Compass search on the simplex along the directions e_i - e_j; moves that
// leave the simplex or lose the interior equilibrium are rejected.
inline std::pair<double, std::array<double, 4>> Refine(
    const PayoffMatrix2x2& matrix, std::array<double, 4> x, Objective f,
    double sign, int steps) {
  auto value = [&](const std::array<double, 4>& y) -> std::optional<double> {
    const auto ip = InteriorEquilibriumAt(matrix, y);
    if (!ip) return std::nullopt;
    return sign * f(*ip);
  };
  double best = *value(x);
  double step = 0.05;
  for (int it = 0; it < steps && step > 1e-13; ++it) {
    bool improved = false;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        const double move = std::min(step, x[j]);
        if (move <= 0.0) continue;
        auto y = x;
        y[i] += move;
        y[j] -= move;
        const auto v = value(y);
        if (v && *v > best) {
          best = *v;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {sign * best, x};
}

}  // namespace internal

// Estimates the ranges of both players' payoffs (and their sum) at interior
// equilibria, over all states that have one. Stratified sampling of the
// simplex and of its faces, then compass-search refinement from the best
// and worst samples of each objective. Deterministic for a given seed.
inline InteriorRangeResult InteriorPayoffRange(const PayoffMatrix2x2& matrix,
                                               const InteriorRangeOptions& opt) {
  if (opt.samples < 10000) {
    throw Error(ErrorKind::kInvalidParameters,
                "interior range estimation needs at least 10^4 samples");
  }
  std::mt19937_64 rng(opt.seed);

  struct Sample {
    std::array<double, 4> x;
    InteriorPoint ip;
  };
  std::vector<Sample> feasible;

  auto consider = [&](const std::array<double, 4>& x) {
    if (auto ip = InteriorEquilibriumAt(matrix, x)) feasible.push_back({x, *ip});
  };

  // Vertices of the simplex, then the interior, the 2-faces and the edges.
  for (int i = 0; i < 4; ++i) {
    std::array<double, 4> e{};
    e[i] = 1.0;
    consider(e);
  }
  static constexpr std::array<std::array<bool, 4>, 4> kFaces = {{
      {false, true, true, true}, {true, false, true, true},
      {true, true, false, true}, {true, true, true, false}}};
  static constexpr std::array<std::array<bool, 4>, 6> kEdges = {{
      {true, true, false, false}, {true, false, true, false},
      {true, false, false, true}, {false, true, true, false},
      {false, true, false, true}, {false, false, true, true}}};
  const std::size_t n = opt.samples;
  for (std::size_t s = 0; s < n; ++s) {
    std::array<double, 4> u{};
    for (auto& ui : u) ui = internal::Unit(rng);
    // Stratify the first uniform so each slice of the simplex is visited.
    u[0] = (double(s) + u[0]) / double(n);
    std::array<bool, 4> support{true, true, true, true};
    switch (s % 4) {
      case 0:
      case 1:
        break;
      case 2:
        support = kFaces[(s / 4) % kFaces.size()];
        break;
      case 3:
        support = kEdges[(s / 4) % kEdges.size()];
        break;
    }
    if (!support[0]) std::swap(u[0], u[1]);
    consider(internal::SimplexPoint(u, support));
  }

  InteriorRangeResult result;
  result.samples = n + 4;
  result.feasible_samples = feasible.size();
  if (feasible.empty()) {
    result.note = "no sampled state admits an interior equilibrium";
    return result;
  }

  auto floor_check = [&](const std::array<double, 4>& x, const InteriorPoint& ip) {
    if (ip.payoff_a >= opt.floor_a - 1e-9 && ip.payoff_b >= opt.floor_b - 1e-9) {
      if (!result.floored_joint_max || ip.Joint() > *result.floored_joint_max) {
        result.floored_joint_max = ip.Joint();
        result.floored_joint_state = x;
      }
    }
  };
  for (const Sample& s : feasible) floor_check(s.x, s.ip);

  constexpr std::size_t kStarts = 8;
  auto estimate = [&](internal::Objective f) {
    std::vector<std::size_t> order(feasible.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    RangeEstimate est;
    for (double sign : {-1.0, 1.0}) {
      const std::size_t k = std::min(kStarts, order.size());
      std::partial_sort(order.begin(), order.begin() + k, order.end(),
                        [&](std::size_t i, std::size_t j) {
                          const double fi = sign * f(feasible[i].ip);
                          const double fj = sign * f(feasible[j].ip);
                          return fi != fj ? fi > fj : i < j;
                        });
      double best = f(feasible[order[0]].ip);
      std::array<double, 4> best_x = feasible[order[0]].x;
      for (std::size_t r = 0; r < k; ++r) {
        const auto [v, x] = internal::Refine(matrix, feasible[order[r]].x, f,
                                             sign, opt.refinement_steps);
        if (sign * v > sign * best) {
          best = v;
          best_x = x;
        }
        floor_check(x, *InteriorEquilibriumAt(matrix, x));
      }
      if (sign < 0) {
        est.lo = best;
        est.lo_state = best_x;
      } else {
        est.hi = best;
        est.hi_state = best_x;
      }
    }
    return est;
  };
  result.a = estimate(internal::ObjA);
  result.b = estimate(internal::ObjB);
  result.joint = estimate(internal::ObjJoint);
  result.note =
      "sampled estimate over an open set: endpoints are approached from "
      "inside and may be suprema/infima rather than attained values";
  return result;
}

}  // namespace qinspect

#endif  // QINSPECT_POLYTOPE_OPT_HPP_
