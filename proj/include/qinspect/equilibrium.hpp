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

#ifndef QINSPECT_EQUILIBRIUM_HPP_
#define QINSPECT_EQUILIBRIUM_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qinspect/bilinear.hpp"
#include "qinspect/game_model.hpp"
#include "qinspect/quantum_core.hpp"

namespace qinspect {

// Coefficient-line values with magnitude at or below this are treated as 0.
inline constexpr double kZeroTolerance = 1e-9;

enum class BestResponse { kZero, kOne, kAny };

inline const char* BestResponseName(BestResponse br) {
  switch (br) {
    case BestResponse::kZero: return "zero";
    case BestResponse::kOne: return "one";
    case BestResponse::kAny: return "any";
  }
  return "?";
}

inline BestResponse BestResponseOf(const BilinearPayoff& payoff, Player player,
                                   double opponent_mix,
                                   double tol = kZeroTolerance) {
  const double slope = payoff.OwnSlope(player, opponent_mix);
  if (slope > tol) return BestResponse::kOne;
  if (slope < -tol) return BestResponse::kZero;
  return BestResponse::kAny;
}

// A pure-strategy corner of the strategy square.
struct Corner {
  int p = 1;
  int q = 1;
  friend bool operator==(const Corner&, const Corner&) = default;
};

// Corners in the order the case analysis treats them.
inline constexpr std::array<Corner, 4> kCorners = {
    Corner{1, 1}, Corner{0, 0}, Corner{1, 0}, Corner{0, 1}};

inline std::string CornerName(Corner c) {
  return "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")";
}

struct PointNe {
  double p = 0.0;
  double q = 0.0;
};

// Profiles with the fixed player's mix held at `value` and the other
// player's mix ranging over [lo, hi].
struct SegmentNe {
  Player fixed_player = Player::kA;
  double value = 0.0;
  double lo = 0.0;
  double hi = 1.0;

  bool OnEdge() const { return value == 0.0 || value == 1.0; }

  StrategyProfile At(double t) const {
    return fixed_player == Player::kA ? StrategyProfile{value, t}
                                      : StrategyProfile{t, value};
  }
};

struct FullSquareNe {};

using NeComponent = std::variant<PointNe, SegmentNe, FullSquareNe>;

enum class NeKind { kPoint, kSegment, kFullSquare, kUnion };

inline const char* NeKindName(NeKind kind) {
  switch (kind) {
    case NeKind::kPoint: return "point";
    case NeKind::kSegment: return "segment";
    case NeKind::kFullSquare: return "full-square";
    case NeKind::kUnion: return "union";
  }
  return "?";
}

// Every equilibrium of a bilinear 2x2 game, as a canonical list of
// components: corners first, then edge segments, then interior pieces.
class NashEquilibriumSet {
 public:
  NashEquilibriumSet() = default;
  explicit NashEquilibriumSet(std::vector<NeComponent> components)
      : components_(std::move(components)) {}

  const std::vector<NeComponent>& components() const { return components_; }

  NeKind kind() const {
    if (components_.size() != 1) return NeKind::kUnion;
    const NeComponent& c = components_.front();
    if (std::holds_alternative<PointNe>(c)) return NeKind::kPoint;
    if (std::holds_alternative<SegmentNe>(c)) return NeKind::kSegment;
    return NeKind::kFullSquare;
  }

  bool Contains(double p, double q, double tol) const {
    for (const NeComponent& c : components_) {
      if (ComponentContains(c, p, q, tol)) return true;
    }
    return false;
  }

  // Evenly spaced members: each point once, `per_segment` + 1 samples per
  // segment, a per_segment x per_segment grid for the full square.
  std::vector<StrategyProfile> SampleMembers(int per_segment = 10) const {
    std::vector<StrategyProfile> out;
    for (const NeComponent& c : components_) {
      AppendSamples(c, per_segment, out);
    }
    return out;
  }

  static bool ComponentContains(const NeComponent& c, double p, double q,
                                double tol) {
    if (const auto* pt = std::get_if<PointNe>(&c)) {
      return std::abs(pt->p - p) <= tol && std::abs(pt->q - q) <= tol;
    }
    if (const auto* seg = std::get_if<SegmentNe>(&c)) {
      const double fixed = seg->fixed_player == Player::kA ? p : q;
      const double free = seg->fixed_player == Player::kA ? q : p;
      return std::abs(fixed - seg->value) <= tol && free >= seg->lo - tol &&
             free <= seg->hi + tol;
    }
    return true;
  }

  static void AppendSamples(const NeComponent& c, int per_segment,
                            std::vector<StrategyProfile>& out) {
    if (const auto* pt = std::get_if<PointNe>(&c)) {
      out.push_back({pt->p, pt->q});
    } else if (const auto* seg = std::get_if<SegmentNe>(&c)) {
      for (int i = 0; i <= per_segment; ++i) {
        out.push_back(
            seg->At(seg->lo + (seg->hi - seg->lo) * i / per_segment));
      }
    } else {
      for (int i = 0; i <= per_segment; ++i)
        for (int j = 0; j <= per_segment; ++j)
          out.push_back({double(i) / per_segment, double(j) / per_segment});
    }
  }

 private:
  std::vector<NeComponent> components_;
};

namespace internal {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Sign structure of an affine function t -> f0 + (f1 - f0) t on [0, 1]
// under the zero tolerance.
struct LineSigns {
  bool identically_zero = false;
  std::optional<double> root;         // a point of [0,1] where |f| <= tol
  std::optional<Interval> nonneg;     // where f >= -tol
  std::optional<Interval> nonpos;     // where f <= tol
  bool zero_at_0 = false;
  bool zero_at_1 = false;
};

inline LineSigns ClassifyLine(double f0, double f1, double tol) {
  LineSigns s;
  s.zero_at_0 = std::abs(f0) <= tol;
  s.zero_at_1 = std::abs(f1) <= tol;
  if (s.zero_at_0 && s.zero_at_1) {
    s.identically_zero = true;
    s.root = 0.0;
    s.nonneg = s.nonpos = Interval{0.0, 1.0};
    return s;
  }
  const double slope = f1 - f0;
  // Some point of [0,1] is within tolerance of zero iff the range of f on
  // [0,1] meets [-tol, tol].
  const double fmin = std::min(f0, f1);
  const double fmax = std::max(f0, f1);
  if (fmin <= tol && fmax >= -tol) {
    double r = slope != 0.0 ? -f0 / slope : 0.0;
    if (s.zero_at_0) r = 0.0;
    if (s.zero_at_1) r = 1.0;
    s.root = std::clamp(r, 0.0, 1.0);
  }
  if (!s.root) {
    if (f0 > 0) s.nonneg = Interval{0.0, 1.0};
    else s.nonpos = Interval{0.0, 1.0};
    return s;
  }
  const double r = *s.root;
  if (slope > 0) {
    s.nonneg = Interval{r, 1.0};
    s.nonpos = Interval{0.0, r};
  } else {
    s.nonneg = Interval{0.0, r};
    s.nonpos = Interval{r, 1.0};
  }
  // A line that only touches zero at an end stays on one side elsewhere.
  if (s.zero_at_0 || s.zero_at_1) {
    const double other = s.zero_at_0 ? f1 : f0;
    if (other > 0) s.nonneg = Interval{0.0, 1.0};
    else s.nonpos = Interval{0.0, 1.0};
  }
  return s;
}

inline void AddSegment(std::vector<SegmentNe>& segments, Player fixed,
                       double value, const std::optional<Interval>& range) {
  if (!range) return;
  segments.push_back({fixed, value, range->lo, range->hi});
}

inline bool CoveredBySegments(const std::vector<SegmentNe>& segments, double p,
                              double q) {
  for (const SegmentNe& s : segments) {
    if (NashEquilibriumSet::ComponentContains(s, p, q, 1e-12)) return true;
  }
  return false;
}

}  // namespace internal

// All Nash equilibria of the game with employer payoff `a` and worker
// payoff `b`. Player A's incentive is the line L_A(q) = alpha_A q + beta_A,
// player B's is L_B(p) = alpha_B p + gamma_B; the equilibrium set is the
// intersection of the two best-response graphs built from their signs.
inline NashEquilibriumSet FindEquilibria(const BilinearPayoff& a,
                                         const BilinearPayoff& b,
                                         double tol = kZeroTolerance) {
  using internal::ClassifyLine;
  const internal::LineSigns la =
      ClassifyLine(a.SlopeInP(0.0), a.SlopeInP(1.0), tol);
  const internal::LineSigns lb =
      ClassifyLine(b.SlopeInQ(0.0), b.SlopeInQ(1.0), tol);

  if (la.identically_zero && lb.identically_zero) {
    return NashEquilibriumSet({FullSquareNe{}});
  }

  std::vector<SegmentNe> segments;
  std::vector<PointNe> points;

  if (la.identically_zero || lb.identically_zero) {
    // One player is indifferent everywhere, so the set is exactly the other
    // player's best-response graph.
    const bool a_free = la.identically_zero;
    const internal::LineSigns& line = a_free ? lb : la;
    const Player mover = a_free ? Player::kB : Player::kA;
    const Player other = a_free ? Player::kA : Player::kB;
    internal::AddSegment(segments, mover, 1.0, line.nonneg);
    internal::AddSegment(segments, mover, 0.0, line.nonpos);
    if (line.root) {
      internal::AddSegment(segments, other, *line.root,
                           internal::Interval{0.0, 1.0});
    }
  } else {
    // A mixes only where L_A vanishes; at an edge (q in {0,1}) every p that
    // keeps q a best response for B is then an equilibrium.
    if (la.zero_at_0) internal::AddSegment(segments, Player::kB, 0.0, lb.nonpos);
    if (la.zero_at_1) internal::AddSegment(segments, Player::kB, 1.0, lb.nonneg);
    if (lb.zero_at_0) internal::AddSegment(segments, Player::kA, 0.0, la.nonpos);
    if (lb.zero_at_1) internal::AddSegment(segments, Player::kA, 1.0, la.nonneg);
    for (const Corner& c : kCorners) {
      const double sa = a.SlopeInP(c.q);
      const double sb = b.SlopeInQ(c.p);
      const bool a_ok = c.p == 1 ? sa >= -tol : sa <= tol;
      const bool b_ok = c.q == 1 ? sb >= -tol : sb <= tol;
      if (a_ok && b_ok) points.push_back({double(c.p), double(c.q)});
    }
    if (la.root && lb.root) points.push_back({*lb.root, *la.root});
  }

  // Degenerate segments are points.
  std::vector<SegmentNe> kept;
  for (const SegmentNe& s : segments) {
    if (s.hi - s.lo <= 0.0) {
      const StrategyProfile pr = s.At(s.lo);
      points.push_back({pr.p, pr.q});
    } else {
      kept.push_back(s);
    }
  }
  segments = std::move(kept);

  std::vector<PointNe> unique_points;
  for (const PointNe& pt : points) {
    if (internal::CoveredBySegments(segments, pt.p, pt.q)) continue;
    const bool dup = std::any_of(
        unique_points.begin(), unique_points.end(), [&](const PointNe& o) {
          return std::abs(o.p - pt.p) <= 1e-12 && std::abs(o.q - pt.q) <= 1e-12;
        });
    if (!dup) unique_points.push_back(pt);
  }

  const auto is_corner = [](const PointNe& pt) {
    return (pt.p == 0.0 || pt.p == 1.0) && (pt.q == 0.0 || pt.q == 1.0);
  };
  const auto corner_rank = [](const PointNe& pt) {
    for (std::size_t i = 0; i < kCorners.size(); ++i) {
      if (pt.p == kCorners[i].p && pt.q == kCorners[i].q) return int(i);
    }
    return int(kCorners.size());
  };
  const auto seg_less = [](const SegmentNe& x, const SegmentNe& y) {
    if (x.fixed_player != y.fixed_player) return x.fixed_player < y.fixed_player;
    if (x.value != y.value) return x.value < y.value;
    return x.lo < y.lo;
  };
  const auto point_less = [](const PointNe& x, const PointNe& y) {
    return x.p != y.p ? x.p < y.p : x.q < y.q;
  };

  std::vector<PointNe> corners;
  std::vector<PointNe> other_points;
  for (const PointNe& pt : unique_points) {
    (is_corner(pt) ? corners : other_points).push_back(pt);
  }
  std::sort(corners.begin(), corners.end(),
            [&](const PointNe& x, const PointNe& y) {
              return corner_rank(x) < corner_rank(y);
            });
  std::vector<SegmentNe> edges;
  std::vector<SegmentNe> inner;
  for (const SegmentNe& s : segments) (s.OnEdge() ? edges : inner).push_back(s);
  std::sort(edges.begin(), edges.end(), seg_less);
  std::sort(inner.begin(), inner.end(), seg_less);
  std::sort(other_points.begin(), other_points.end(), point_less);

  std::vector<NeComponent> out;
  for (const auto& c : corners) out.emplace_back(c);
  for (const auto& s : edges) out.emplace_back(s);
  for (const auto& pt : other_points) {
    const bool on_edge = pt.p == 0.0 || pt.p == 1.0 || pt.q == 0.0 || pt.q == 1.0;
    if (on_edge) out.emplace_back(pt);
  }
  for (const auto& s : inner) out.emplace_back(s);
  for (const auto& pt : other_points) {
    const bool on_edge = pt.p == 0.0 || pt.p == 1.0 || pt.q == 0.0 || pt.q == 1.0;
    if (!on_edge) out.emplace_back(pt);
  }
  return NashEquilibriumSet(std::move(out));
}

inline NashEquilibriumSet FindEquilibria(const PayoffMatrix2x2& matrix,
                                         const QuantumState& state) {
  return FindEquilibria(BilinearCoefficients(matrix, state, Player::kA),
                        BilinearCoefficients(matrix, state, Player::kB));
}

struct ConditionLine {
  std::string description;
  double lhs = 0.0;
  bool satisfied = false;
};

struct CornerConditionReport {
  Corner corner;
  std::string label;  // C1..C4
  std::vector<ConditionLine> inequalities;

  bool Satisfied() const {
    return std::all_of(inequalities.begin(), inequalities.end(),
                       [](const ConditionLine& l) { return l.satisfied; });
  }
};

namespace internal {

struct ReferenceCondition {
  Corner corner;
  const char* label;
  std::array<std::array<int, 4>, 2> rows;
};

// Corner conditions for the reference instance, scaled to small integers.
inline constexpr std::array<ReferenceCondition, 4> kReferenceConditions = {{
    {Corner{1, 1}, "C1", {{{-2, 3, 2, -3}, {1, -1, -3, 3}}}},
    {Corner{0, 0}, "C2", {{{-3, 2, 3, -2}, {3, -3, -1, 1}}}},
    {Corner{1, 0}, "C3", {{{3, -2, -3, 2}, {-1, 1, 3, -3}}}},
    {Corner{0, 1}, "C4", {{{2, -3, -2, 3}, {-3, 3, 1, -1}}}},
}};

inline std::string DescribeRow(const std::array<int, 4>& row) {
  static constexpr std::array<const char*, 4> kNames = {"|a|^2", "|b|^2",
                                                        "|c|^2", "|d|^2"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    const int c = row[i];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (std::abs(c) != 1) out += std::to_string(std::abs(c));
    out += kNames[i];
  }
  return out + " >= 0";
}

}  // namespace internal

// Evaluates the corner's two conditions (reference instance) on the
// state's outcome probabilities.
inline CornerConditionReport CornerConditions(const std::array<double, 4>& x,
                                              Corner corner) {
  for (const auto& pc : internal::kReferenceConditions) {
    if (!(pc.corner == corner)) continue;
    CornerConditionReport report{corner, pc.label, {}};
    for (const auto& row : pc.rows) {
      double lhs = 0.0;
      for (int i = 0; i < 4; ++i) lhs += row[i] * x[i];
      report.inequalities.push_back(
          {internal::DescribeRow(row), lhs, lhs >= -kZeroTolerance});
    }
    return report;
  }
  throw Error(ErrorKind::kInvalidParameters, "corner must be in {0,1}^2");
}

inline CornerConditionReport CornerConditions(const QuantumState& state,
                                              Corner corner) {
  return CornerConditions(state.Probabilities(), corner);
}

// Interior equilibrium of the reference instance from the closed-form
// indifference solution; absent when the denominator vanishes or either
// component falls outside the open unit interval.
inline std::optional<StrategyProfile> InteriorNe(
    const std::array<double, 4>& x) {
  const auto [a, b, c, d] = x;
  const double denom = a - b - c + d;
  if (std::abs(4.0 * denom) <= 1e-12) return std::nullopt;
  const double p = (3 * a - 3 * b - c + d) / (4 * denom);
  const double q = (3 * a - 2 * b - 3 * c + 2 * d) / (5 * denom);
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) return std::nullopt;
  return StrategyProfile{p, q};
}

inline std::optional<StrategyProfile> InteriorNe(const QuantumState& state) {
  return InteriorNe(state.Probabilities());
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool Constant(double tol) const { return hi - lo <= tol; }
};

struct NePayoffEntry {
  NeComponent component;
  StrategyProfile representative;
  double payoff_a = 0.0;  // at the representative profile
  double payoff_b = 0.0;
  double joint = 0.0;
  Range range_a;
  Range range_b;
  Range range_joint;
  bool constant = false;  // payoffs constant over the component within 1e-9
};

inline constexpr double kConstancyTolerance = 1e-9;

inline NePayoffEntry ComponentPayoffs(const NeComponent& component,
                                      const BilinearPayoff& pa,
                                      const BilinearPayoff& pb,
                                      int samples = 20) {
  std::vector<StrategyProfile> members;
  NashEquilibriumSet::AppendSamples(component, samples, members);
  NePayoffEntry e;
  e.component = component;
  e.representative = members[members.size() / 2];
  e.payoff_a = pa.Evaluate(e.representative.p, e.representative.q);
  e.payoff_b = pb.Evaluate(e.representative.p, e.representative.q);
  e.joint = e.payoff_a + e.payoff_b;
  e.range_a = e.range_b = e.range_joint = {1e300, -1e300};
  // Bilinear payoffs attain their extremes over a segment or square at its
  // ends or corners, all of which are among the samples.
  for (const StrategyProfile& m : members) {
    const double va = pa.Evaluate(m.p, m.q);
    const double vb = pb.Evaluate(m.p, m.q);
    for (auto [r, v] : {std::pair{&e.range_a, va}, std::pair{&e.range_b, vb},
                        std::pair{&e.range_joint, va + vb}}) {
      r->lo = std::min(r->lo, v);
      r->hi = std::max(r->hi, v);
    }
  }
  e.constant = e.range_a.Constant(kConstancyTolerance) &&
               e.range_b.Constant(kConstancyTolerance);
  return e;
}

inline std::vector<NePayoffEntry> NePayoffs(const QuantumState& state,
                                            const PayoffMatrix2x2& matrix,
                                            const NashEquilibriumSet& ne) {
  const BilinearPayoff pa = BilinearCoefficients(matrix, state, Player::kA);
  const BilinearPayoff pb = BilinearCoefficients(matrix, state, Player::kB);
  std::vector<NePayoffEntry> out;
  for (const NeComponent& c : ne.components()) {
    out.push_back(ComponentPayoffs(c, pa, pb));
  }
  return out;
}

// Grid check used by tests and the report: the largest unilateral gain
// available to either player at `profile`.
inline double MaxDeviationGain(const BilinearPayoff& pa,
                               const BilinearPayoff& pb,
                               const StrategyProfile& profile) {
  return std::max(DeviationGain(pa, Player::kA, profile.p, profile.q),
                  DeviationGain(pb, Player::kB, profile.q, profile.p));
}

}  // namespace qinspect

#endif  // QINSPECT_EQUILIBRIUM_HPP_
