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

#include "qinspect/polytope_opt.hpp"

#include <random>

#include "gtest/gtest.h"

namespace qinspect {
namespace {

const PayoffMatrix2x2& Reference() {
  static const PayoffMatrix2x2 m = BuildInspectionMatrix(ReferenceParams());
  return m;
}

Rational R(long n, long d = 1) { return Rational(n, d); }

RationalVec4 V(long a, long b, long c, long d) { return {R(a), R(b), R(c), R(d)}; }

TEST(Rationals, ShortestDecimalConversion) {
  EXPECT_EQ(RationalFromDouble(0.1), R(1, 10));
  EXPECT_EQ(RationalFromDouble(-20), R(-20));
  EXPECT_EQ(RationalFromDouble(0.75), R(3, 4));
  EXPECT_EQ(RationalFromDouble(1e-3), R(1, 1000));
  EXPECT_EQ(RationalFromDouble(2.5e3), R(2500));
  EXPECT_THROW(RationalFromDouble(std::nan("")), Error);
}

TEST(ProbabilityVector, ExactNormalization) {
  EXPECT_NO_THROW(ProbabilityVector::Make({R(1, 3), R(1, 3), R(1, 3), R(0)}));
  EXPECT_THROW(ProbabilityVector::Make({R(1, 3), R(1, 3), R(1, 4), R(0)}), Error);
  EXPECT_THROW(ProbabilityVector::Make({R(-1, 2), R(1), R(1, 2), R(0)}), Error);
}

TEST(LinearProgram, RejectsBadConstraints) {
  EXPECT_THROW(LinearProgram(V(1, 0, 0, 0), {{V(0, 0, 0, 0), Sense::kGreaterEqual, 0, "z"}}),
               Error);
  std::vector<LinearConstraint> many(12, {V(1, 0, 0, 0), Sense::kGreaterEqual, 0, "x"});
  EXPECT_THROW(LinearProgram(V(1, 0, 0, 0), many), Error);
  const LinearProgram empty(V(1, 0, 0, 0), {{V(1, 1, 1, 1), Sense::kGreaterEqual, 2, "big"}});
  EXPECT_THROW(EnumerateVertices(empty), Error);
}

TEST(EnumerateVertices, Examples) {
  const auto simplex = EnumerateVertices(LinearProgram(V(0, 0, 0, 0), {}));
  ASSERT_EQ(simplex.size(), 4u);
  std::set<RationalVec4> got;
  for (const auto& v : simplex) got.insert(v.values());
  EXPECT_TRUE(got.count(V(1, 0, 0, 0)) && got.count(V(0, 1, 0, 0)) &&
              got.count(V(0, 0, 1, 0)) && got.count(V(0, 0, 0, 1)));

  // x1 = x2 written as two opposing inequalities.
  const LinearProgram tie(V(0, 0, 0, 0), {{V(1, -1, 0, 0), Sense::kGreaterEqual, 0, "ge"},
                                          {V(-1, 1, 0, 0), Sense::kGreaterEqual, 0, "le"}});
  std::set<RationalVec4> tv;
  for (const auto& v : EnumerateVertices(tie)) tv.insert(v.values());
  EXPECT_EQ(tv, (std::set<RationalVec4>{{R(1, 2), R(1, 2), R(0), R(0)},
                                        V(0, 0, 1, 0), V(0, 0, 0, 1)}));

  const LinearProgram c1(V(0, 0, 0, 0), CornerConstraints(Reference(), Corner{1, 1}));
  bool has = false;
  for (const auto& v : EnumerateVertices(c1)) {
    has = has || v.values() == RationalVec4{R(7, 12), R(1, 3), R(1, 12), R(0)};
  }
  EXPECT_TRUE(has);
}

TEST(Optimize, Examples) {
  const LinearizedGame game(Reference());
  const LinearProgram a(game.PayoffAt(Target::kA, 1, 1),
                        CornerConstraints(Reference(), Corner{1, 1}));
  EXPECT_EQ(MaximizeLinear(a).optimum, R(58, 3));
  EXPECT_EQ(MinimizeLinear(a).optimum, R(-14));
  const LinearProgram b = a.WithObjective(game.PayoffAt(Target::kB, 1, 1));
  EXPECT_EQ(MaximizeLinear(b).optimum, R(85, 8));
  EXPECT_EQ(MinimizeLinear(b).optimum, R(5, 2));
  EXPECT_EQ(MaximizeLinear(a.WithObjective(V(0, 0, 0, 0))).optimum, R(0));
}

TEST(CornerRanges, SameAtEveryCorner) {
  for (const Corner& c : kCorners) {
    const auto ra = PayoffRangeForCorner(Reference(), c, Target::kA);
    const auto rb = PayoffRangeForCorner(Reference(), c, Target::kB);
    const auto rj = PayoffRangeForCorner(Reference(), c, Target::kJoint);
    EXPECT_EQ(ra.min, R(-14)) << CornerName(c);
    EXPECT_EQ(ra.max, R(58, 3));
    EXPECT_EQ(rb.min, R(5, 2));
    EXPECT_EQ(rb.max, R(85, 8));
    EXPECT_EQ(rj.min, R(-6));
    EXPECT_EQ(rj.max, R(68, 3));
  }
}

TEST(Pareto, CornerMaximaAndWitnesses) {
  const std::map<std::pair<int, int>, RationalVec4> witness = {
      {{1, 1}, {R(9, 20), R(3, 10), R(3, 20), R(1, 10)}},
      {{0, 0}, {R(1, 10), R(3, 20), R(3, 10), R(9, 20)}},
      {{1, 0}, {R(3, 10), R(9, 20), R(1, 10), R(3, 20)}},
      {{0, 1}, {R(3, 20), R(1, 10), R(9, 20), R(3, 10)}},
  };
  for (const Corner& c : kCorners) {
    const OptimizationResult r = ParetoImprovementMax(Reference(), c, 16, 5);
    EXPECT_EQ(r.optimum, R(21)) << CornerName(c);
    const LinearProgram prog = ParetoProgram(Reference(), c, 16, 5);
    const RationalVec4& known = witness.at({c.p, c.q});
    EXPECT_TRUE(prog.IsFeasible(known)) << CornerName(c);
    EXPECT_EQ(prog.Value(known), R(21)) << CornerName(c);
    EXPECT_EQ(prog.Value(r.witness.values()), r.optimum);
    // Both floors are tight at the optimum.
    std::set<std::string> active;
    for (std::size_t i : r.active_constraints) active.insert(prog.constraints()[i].label);
    EXPECT_TRUE(active.count("A payoff floor") && active.count("B payoff floor"));
  }
  EXPECT_THROW(ParetoImprovementMax(Reference(), Corner{1, 1}, 20, 5), Error);
}

TEST(Pareto, EdgeFamiliesNeverBeatTheFloors) {
  for (EdgeFamily f : kEdgeFamilies) {
    const EdgeParetoResult r = EdgeParetoScan(Reference(), f, 16, 5, 40);
    if (r.feasible) {
      EXPECT_LE(r.best_joint, R(21)) << EdgeFamilyName(f);
    }
  }
}

// The derived corner conditions are positive multiples of the reference ones.
TEST(CornerConstraints, MatchReferenceConditions) {
  for (const auto& pc : internal::kReferenceConditions) {
    const auto derived = CornerConstraints(Reference(), pc.corner);
    ASSERT_EQ(derived.size(), 2u);
    for (int k = 0; k < 2; ++k) {
      std::optional<Rational> ratio;
      for (int i = 0; i < 4; ++i) {
        const Rational ref = pc.rows[k][i];
        if (ref == 0) {
          EXPECT_EQ(derived[k].coeffs[i], 0);
          continue;
        }
        const Rational r = derived[k].coeffs[i] / ref;
        if (!ratio) ratio = r;
        EXPECT_EQ(r, *ratio) << pc.label << " row " << k;
      }
      ASSERT_TRUE(ratio);
      EXPECT_GT(*ratio, 0);
    }
  }
}

// Checks each vertex is feasible with four independent tight constraints,
// and that no point of a rational grid on the simplex beats the optimum.
void CheckProgram(const LinearProgram& prog, const std::string& context) {
  std::vector<ProbabilityVector> verts;
  try {
    verts = EnumerateVertices(prog);
  } catch (const Error&) {
    // Infeasible: no grid point may be feasible either (grid is exact here).
    verts.clear();
  }
  for (const auto& v : verts) {
    ASSERT_TRUE(prog.IsFeasible(v.values())) << context;
    std::vector<std::array<Rational, 5>> tight;
    for (const auto& c : prog.constraints()) {
      if (c.TightAt(v.values())) tight.push_back(internal::Augmented(c));
    }
    ASSERT_EQ(internal::Rank(tight), 4u) << context;
  }
  constexpr int kN = 12;
  Rational best_grid;
  bool any = false;
  for (int i = 0; i <= kN; ++i)
    for (int j = 0; i + j <= kN; ++j)
      for (int k = 0; i + j + k <= kN; ++k) {
        const RationalVec4 x = {R(i, kN), R(j, kN), R(k, kN), R(kN - i - j - k, kN)};
        if (!prog.IsFeasible(x)) continue;
        ASSERT_FALSE(verts.empty()) << context << " grid point feasible";
        const Rational v = prog.Value(x);
        if (!any || v > best_grid) best_grid = v;
        any = true;
      }
  if (verts.empty()) return;
  const OptimizationResult mx = MaximizeLinear(prog);
  const OptimizationResult mn = MinimizeLinear(prog);
  if (any) {
    EXPECT_GE(mx.optimum, best_grid) << context;
  }
  for (const auto& v : verts) {
    EXPECT_LE(prog.Value(v.values()), mx.optimum);
    EXPECT_GE(prog.Value(v.values()), mn.optimum);
  }
}

TEST(EnumerateVertices, SoundAndOptimalOnRandomPrograms) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> c(-3, 3), count(0, 4), sense(0, 4);
  for (int t = 0; t < 300; ++t) {
    std::vector<LinearConstraint> extra;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      LinearConstraint lc{V(c(rng), c(rng), c(rng), c(rng)),
                          sense(rng) == 0 ? Sense::kEqual : Sense::kGreaterEqual, R(c(rng), 4),
                          "r" + std::to_string(k)};
      if (lc.AllZero()) continue;
      extra.push_back(lc);
    }
    CheckProgram(LinearProgram(V(c(rng), c(rng), c(rng), c(rng)), extra),
                 "program " + std::to_string(t));
  }
}

TEST(CornerPrograms, OptimaAgreeWithGrid) {
  const LinearizedGame game(Reference());
  for (const Corner& c : kCorners) {
    for (Target t : {Target::kA, Target::kB, Target::kJoint}) {
      CheckProgram(LinearProgram(game.PayoffAt(t, c.p, c.q), CornerConstraints(Reference(), c)),
                   CornerName(c));
    }
    CheckProgram(ParetoProgram(Reference(), c, 16, 5), CornerName(c));
  }
}

TEST(InteriorRange, ReferencePointAndFloors) {
  const auto e1 = InteriorEquilibriumAt(Reference(), {1, 0, 0, 0});
  ASSERT_TRUE(e1);
  EXPECT_NEAR(e1->payoff_a, 16, 1e-12);
  EXPECT_NEAR(e1->payoff_b, 5, 1e-12);
  InteriorRangeOptions opt;
  opt.samples = 20000;
  opt.refinement_steps = 60;
  const InteriorRangeResult r = InteriorPayoffRange(Reference(), opt);
  EXPECT_GE(r.samples, 20000u);
  EXPECT_GT(r.feasible_samples, 0u);
  EXPECT_LE(r.a.lo, 16.0);
  EXPECT_GE(r.a.hi, 16.0);
  ASSERT_TRUE(r.floored_joint_max);
  EXPECT_LE(*r.floored_joint_max, 21.0 + 1e-6);
  EXPECT_GE(*r.floored_joint_max, 21.0 - 1e-9);
  // Every reported extreme is attained at its recorded state.
  const auto hi = InteriorEquilibriumAt(Reference(), r.joint.hi_state);
  ASSERT_TRUE(hi);
  EXPECT_DOUBLE_EQ(hi->Joint(), r.joint.hi);
}

TEST(InteriorRange, DeterministicBySeed) {
  InteriorRangeOptions opt;
  opt.samples = 10000;
  opt.refinement_steps = 20;
  const auto r1 = InteriorPayoffRange(Reference(), opt);
  const auto r2 = InteriorPayoffRange(Reference(), opt);
  EXPECT_EQ(r1.a.lo, r2.a.lo);
  EXPECT_EQ(r1.joint.hi, r2.joint.hi);
  EXPECT_EQ(r1.joint.hi_state, r2.joint.hi_state);
  opt.samples = 9999;
  EXPECT_THROW(InteriorPayoffRange(Reference(), opt), Error);
}

}  // namespace
}  // namespace qinspect
