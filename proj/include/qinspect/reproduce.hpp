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

#ifndef QINSPECT_REPRODUCE_HPP_
#define QINSPECT_REPRODUCE_HPP_

#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "qinspect/scenario.hpp"

namespace qinspect {

struct ReproduceOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 100000;
  int refinement_steps = 200;
  double tolerance = 1e-9;  // float comparisons that are not sampling based
};

// A built-in initial state given by its outcome probabilities.
struct NamedState {
  const char* name;
  std::array<double, 4> probabilities;
};

inline const std::vector<NamedState>& ReferenceExamples() {
  static const std::vector<NamedState> kExamples = {
      {"state |IW>", {1, 0, 0, 0}},
      {"state (|IW>+|NS>)/sqrt2", {0.5, 0, 0, 0.5}},
      {"state (|IS>+|NW>)/sqrt2", {0, 0.5, 0.5, 0}},
      {"state (|IW>+|IS>)/sqrt2", {0.5, 0.5, 0, 0}},
      {"state (|NW>+|NS>)/sqrt2", {0, 0, 0.5, 0.5}},
      {"state (|IW>+|NW>)/sqrt2", {0.5, 0, 0.5, 0}},
      {"state (|IS>+|NS>)/sqrt2", {0, 0.5, 0, 0.5}},
      {"state uniform superposition", {0.25, 0.25, 0.25, 0.25}},
  };
  return kExamples;
}

class GoldenBattery {
 public:
  explicit GoldenBattery(double tol) : tol_(tol) {}

  void Add(std::string name, Json expected, Json actual, std::string tolerance,
           bool pass) {
    items_.push_back(Json{{"name", std::move(name)},
                          {"expected", std::move(expected)},
                          {"actual", std::move(actual)},
                          {"tolerance", std::move(tolerance)},
                          {"pass", pass}});
    all_pass_ = all_pass_ && pass;
  }

  void AddNumbers(std::string name, const std::vector<double>& expected,
                  const std::vector<double>& actual, double tol) {
    bool pass = expected.size() == actual.size();
    for (std::size_t i = 0; pass && i < expected.size(); ++i) {
      pass = std::abs(expected[i] - actual[i]) <= tol;
    }
    std::ostringstream t;
    t << tol;
    Add(std::move(name), Json(expected), Json(actual), t.str(), pass);
  }

  void AddExact(std::string name, const std::vector<Rational>& expected,
                const std::vector<Rational>& actual) {
    Json e = Json::array(), a = Json::array();
    for (const auto& r : expected) e.push_back(RationalToJson(r));
    for (const auto& r : actual) a.push_back(RationalToJson(r));
    Add(std::move(name), e, a, "exact", expected == actual);
  }

  double tol() const { return tol_; }
  const Json& items() const { return items_; }
  bool all_pass() const { return all_pass_; }

 private:
  double tol_;
  Json items_ = Json::array();
  bool all_pass_ = true;
};

namespace internal {

inline std::string Compact(const Json& j) {
  std::string s = j.dump();
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return s;
}

inline std::string SummaryTable(const Json& items, bool pass) {
  std::ostringstream os;
  os << std::left << std::setw(48) << "item" << "  " << std::setw(6) << "status"
     << "  actual\n";
  os << std::string(48, '-') << "  ------  " << std::string(40, '-') << "\n";
  for (const Json& it : items) {
    os << std::left << std::setw(48) << it["name"].get<std::string>() << "  "
       << std::setw(6) << (it["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
       << Compact(it["actual"]) << "\n";
  }
  os << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

// Structural equality where numbers may differ by at most `tol`.
inline bool JsonNear(const Json& a, const Json& b, double tol) {
  if (a.is_number() && b.is_number()) {
    return std::abs(a.get<double>() - b.get<double>()) <= tol;
  }
  if (a.type() != b.type() || a.size() != b.size()) return false;
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!JsonNear(a[i], b[i], tol)) return false;
    }
    return true;
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) || !JsonNear(it.value(), b[it.key()], tol)) return false;
    }
    return true;
  }
  return a == b;
}

}  // namespace internal

// Recomputes every reference number for the reference instance and
// compares it to embedded golden values. Failures are reported, not thrown.
inline ReportDocument ReproduceReference(const ReproduceOptions& opt = {}) {
  const InspectionParams params = ReferenceParams();
  const PayoffMatrix2x2 m = BuildInspectionMatrix(params);
  GoldenBattery g(opt.tolerance);
  const double tol = opt.tolerance;

  // Classical game.
  {
    std::vector<double> cells;
    for (const Outcome& o : m.cells()) {
      cells.push_back(o.a);
      cells.push_back(o.b);
    }
    g.AddNumbers("classical payoff matrix", {32, 5, -8, 0, 40, 5, -20, 20}, cells, 0.0);
    const StrategyProfile ne = ClassicalMixedNe(params);
    g.AddNumbers("classical NE", {0.75, 0.6}, {ne.p, ne.q}, tol);
    const PayoffTriple pay = ClassicalNePayoffs(params);
    g.AddNumbers("classical NE payoffs", {16, 5, 21}, {pay.a, pay.b, pay.joint}, tol);
    const double ea = ClassicalExpectedPayoff(m, ne, Player::kA);
    const double eb = ClassicalExpectedPayoff(m, ne, Player::kB);
    g.AddNumbers("classical expected payoff at NE", {16, 5}, {ea, eb}, tol);
    const bool verified =
        VerifyClassicalNe(m, ne, 1e-9) && !VerifyClassicalNe(m, {1, 1}, 1e-9) &&
        !VerifyClassicalNe(m, {0, 0}, 1e-9) && !VerifyClassicalNe(m, {1, 0}, 1e-9) &&
        !VerifyClassicalNe(m, {0, 1}, 1e-9);
    g.Add("classical NE verified, no pure NE", true, verified, "exact", verified);
  }

  // Quantized game reduces to the classical one for |IW>.
  {
    const QuantumState iw = QuantumState::Basis(0);
    const BilinearPayoff a = BilinearCoefficients(m, iw, Player::kA);
    const BilinearPayoff b = BilinearCoefficients(m, iw, Player::kB);
    g.AddNumbers("|IW> bilinear coefficients A", {-20, 12, 60, -20},
                 {a.alpha, a.beta, a.gamma, a.delta}, 0.0);
    g.AddNumbers("|IW> bilinear coefficients B", {20, -20, -15, 20},
                 {b.alpha, b.beta, b.gamma, b.delta}, 0.0);
  }

  // Corner conditions C1..C4 on their example states.
  {
    const std::array<std::array<double, 4>, 4> examples = {{
        {0.6, 0.4, 0, 0}, {0.4375, 0.375, 0.1875, 0}, {0.75, 0, 0.25, 0}, {0, 0.5, 0, 0.5}}};
    for (std::size_t k = 0; k < 4; ++k) {
      const Corner c = kCorners[k];
      const QuantumState s = QuantumState::FromProbabilities(examples[k]);
      const CornerConditionReport rep = CornerConditions(s, c);
      const bool in_ne = FindEquilibria(m, s).Contains(c.p, c.q, 1e-12);
      g.Add(rep.label + std::string(" example state, corner ") + CornerName(c),
            Json{{"conditions", true}, {"corner_in_ne_set", true}},
            Json{{"conditions", rep.Satisfied()}, {"corner_in_ne_set", in_ne}},
            "exact", rep.Satisfied() && in_ne);
    }
  }

  // Exact payoff ranges at each corner.
  {
    const Rational lo_a = -14, hi_a = Rational(58, 3);
    const Rational lo_b = Rational(5, 2), hi_b = Rational(85, 8);
    const Rational lo_j = -6, hi_j = Rational(68, 3);
    for (const Corner& c : kCorners) {
      const RationalRange ra = PayoffRangeForCorner(m, c, Target::kA);
      const RationalRange rb = PayoffRangeForCorner(m, c, Target::kB);
      const RationalRange rj = PayoffRangeForCorner(m, c, Target::kJoint);
      g.AddExact("corner " + CornerName(c) + " payoff ranges A,B,joint",
                 {lo_a, hi_a, lo_b, hi_b, lo_j, hi_j},
                 {ra.min, ra.max, rb.min, rb.max, rj.min, rj.max});
      g.AddNumbers("corner " + CornerName(c) + " rounded decimals", {19.333, 22.667},
                   {ToDouble(ra.max), ToDouble(rj.max)}, 5e-4);
    }
  }

  // Pareto tests at the corners, with the reference witnesses.
  {
    const std::array<std::array<double, 4>, 4> witnesses = {{
        {0.45, 0.3, 0.15, 0.1}, {0.1, 0.15, 0.3, 0.45},
        {0.3, 0.45, 0.1, 0.15}, {0.15, 0.1, 0.45, 0.3}}};
    const Rational fa = 16, fb = 5;
    const LinearizedGame game(m);
    for (std::size_t k = 0; k < 4; ++k) {
      const Corner c = kCorners[k];
      const LinearProgram lp = ParetoProgram(m, c, fa, fb);
      const OptimizationResult r = MaximizeLinear(lp);
      const Rational pa = Dot(game.PayoffAt(Target::kA, c.p, c.q), r.witness.values());
      const Rational pb = Dot(game.PayoffAt(Target::kB, c.p, c.q), r.witness.values());
      g.AddExact("corner " + CornerName(c) + " Pareto max, payoffs at optimum",
                 {21, 16, 5}, {r.optimum, pa, pb});
      const ProbabilityVector w = ProbabilityVector::FromDoubles(witnesses[k]);
      const bool feasible = lp.IsFeasible(w.values());
      g.Add("corner " + CornerName(c) + " reference witness",
            Json{{"feasible", true}, {"joint", 21}},
            Json{{"feasible", feasible}, {"joint", RationalToJson(lp.Value(w.values()))}},
            "exact", feasible && lp.Value(w.values()) == 21);
    }
    for (EdgeFamily f : kEdgeFamilies) {
      const EdgeParetoResult r = EdgeParetoScan(m, f, fa, fb, kEdgeScanGrid);
      const bool ok = !r.feasible || r.best_joint <= 21;
      g.Add(std::string("edge ") + EdgeFamilyName(f) + " floored joint max <= 21",
            RationalToJson(21),
            r.feasible ? RationalToJson(r.best_joint) : Json("infeasible"), "exact", ok);
    }
  }

  // Interior equilibria.
  {
    InteriorRangeOptions io;
    io.samples = opt.samples;
    io.refinement_steps = opt.refinement_steps;
    io.seed = opt.seed;
    const InteriorRangeResult r = InteriorPayoffRange(m, io);
    const auto check = [&](const char* name, const RangeEstimate& est, double lo,
                           double hi) {
      const bool pass = est.lo >= lo - 1e-6 && est.hi <= hi + 1e-6 &&
                        std::abs(est.lo - lo) <= 0.05 && std::abs(est.hi - hi) <= 0.05;
      g.Add(std::string("interior NE range ") + name, Json::array({lo, hi}),
            Json::array({est.lo, est.hi}), "endpoints 0.05, violation 1e-6", pass);
    };
    check("A", r.a, 11, 16);
    check("B", r.b, 5, 7.5);
    check("joint", r.joint, 18.5, 21);
    g.Add("interior NE floored joint max <= 21", 21,
          r.floored_joint_max ? Json(*r.floored_joint_max) : Json(nullptr), "1e-6",
          r.floored_joint_max && *r.floored_joint_max <= 21 + 1e-6);
  }

  // Typical initial states.
  {
    struct Expected {
      Json structure;
      double a, b;
    };
    const auto point = [](double p, double q) {
      return Json{{"kind", "point"},
                  {"components", Json::array({Json{{"type", "point"}, {"p", p}, {"q", q}}})}};
    };
    const auto segment = [](const char* player, double v) {
      return Json{{"kind", "segment"},
                  {"components", Json::array({Json{{"type", "segment"},
                                                   {"fixed_player", player},
                                                   {"fixed_value", v},
                                                   {"free_range", Json::array({0.0, 1.0})}}})}};
    };
    const Json square{{"kind", "full-square"},
                      {"components", Json::array({Json{{"type", "full-square"}}})}};
    const std::vector<Expected> expected = {
        {point(0.75, 0.6), 16, 5},  {point(0.5, 0.5), 11, 7.5}, {point(0.5, 0.5), 11, 7.5},
        {segment("A", 1), 12, 2.5}, {segment("A", 0), 12, 2.5}, {segment("B", 0), -14, 10},
        {segment("B", 1), -14, 10}, {square, 11, 7.5}};
    const auto& examples = ReferenceExamples();
    for (std::size_t k = 0; k < examples.size(); ++k) {
      const QuantumState s = QuantumState::FromProbabilities(examples[k].probabilities);
      const NashEquilibriumSet ne = FindEquilibria(m, s);
      const auto pays = NePayoffs(s, m, ne);
      const Json structure = NeSetToJson(ne);
      bool pass = internal::JsonNear(structure, expected[k].structure, tol) &&
                  pays.size() == 1;
      if (pass) {
        const NePayoffEntry& e = pays.front();
        pass = e.constant && std::abs(e.payoff_a - expected[k].a) <= tol &&
               std::abs(e.payoff_b - expected[k].b) <= tol;
      }
      Json actual{{"equilibria", structure}};
      if (!pays.empty()) {
        actual["payoffs"] = Json::array({pays.front().payoff_a, pays.front().payoff_b});
        actual["constant"] = pays.front().constant;
      }
      g.Add(examples[k].name,
            Json{{"equilibria", expected[k].structure},
                 {"payoffs", Json::array({expected[k].a, expected[k].b})},
                 {"constant", true}},
            actual, "structure and payoffs " + Json(tol).dump(), pass);
    }
  }

  ReportDocument doc;
  Json& j = doc.json;
  j["tool"] = "qinspect";
  j["version"] = kReportVersion;
  j["command"] = "reproduce";
  j["seed"] = opt.seed;
  j["samples"] = opt.samples;
  j["tolerances"] = ToleranceBlock();
  j["tolerances"]["comparison"] = opt.tolerance;
  j["items"] = g.items();
  j["pass"] = g.all_pass();
  doc.pass = g.all_pass();
  doc.summary = internal::SummaryTable(g.items(), doc.pass);
  return doc;
}

}  // namespace qinspect

#endif  // QINSPECT_REPRODUCE_HPP_
