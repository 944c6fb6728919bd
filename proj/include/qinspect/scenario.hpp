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

#ifndef QINSPECT_SCENARIO_HPP_
#define QINSPECT_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qinspect/equilibrium.hpp"
#include "qinspect/errors.hpp"
#include "qinspect/game_model.hpp"
#include "qinspect/polytope_opt.hpp"
#include "qinspect/quantum_core.hpp"

namespace qinspect {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20150101;
inline constexpr int kEdgeScanGrid = 200;

struct AnalysisFlags {
  bool classical = false;
  std::optional<StrategyProfile> quantum_payoff;
  bool find_ne = false;
  bool corner_cases = false;
  bool pareto = false;
  // Payoff floors for the Pareto test; defaults to the classical NE payoffs
  // when the game is given by inspection parameters.
  std::optional<std::array<double, 2>> pareto_floors;
  bool interior_range = false;
  InteriorRangeOptions interior;
};

struct ScenarioConfig {
  std::optional<InspectionParams> params;
  std::optional<PayoffMatrix2x2> matrix;
  std::array<Complex, 4> amplitudes{};
  AnalysisFlags analysis;

  PayoffMatrix2x2 Matrix() const {
    return params ? BuildInspectionMatrix(*params) : *matrix;
  }
  QuantumState State() const { return QuantumState::FromAmplitudes(amplitudes); }
};

// ---------------------------------------------------------------------------
// JSON helpers

inline Json RationalToJson(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  Json out;
  const boost::multiprecision::cpp_int lim = std::numeric_limits<std::int64_t>::max();
  if (num <= lim && num >= -lim && den <= lim) {
    out["num"] = num.convert_to<std::int64_t>();
    out["den"] = den.convert_to<std::int64_t>();
  } else {
    out["num"] = num.str();
    out["den"] = den.str();
  }
  out["decimal"] = ToDouble(r);
  return out;
}

inline Json ProbVecToJson(const ProbabilityVector& x) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(RationalToJson(x[i]));
  return out;
}

inline Json ArrayToJson(const std::array<double, 4>& x) {
  return Json::array({x[0], x[1], x[2], x[3]});
}

inline Json BilinearToJson(const BilinearPayoff& b) {
  return Json{{"alpha", b.alpha}, {"beta", b.beta}, {"gamma", b.gamma},
              {"delta", b.delta}};
}

inline Json MatrixToJson(const PayoffMatrix2x2& m) {
  Json out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[kOutcomeLabels[i]] = Json::array({m.Cell(i).a, m.Cell(i).b});
  }
  return out;
}

inline Json ComponentToJson(const NeComponent& c) {
  if (const auto* pt = std::get_if<PointNe>(&c)) {
    return Json{{"type", "point"}, {"p", pt->p}, {"q", pt->q}};
  }
  if (const auto* s = std::get_if<SegmentNe>(&c)) {
    return Json{{"type", "segment"},
                {"fixed_player", PlayerName(s->fixed_player)},
                {"fixed_value", s->value},
                {"free_range", Json::array({s->lo, s->hi})}};
  }
  return Json{{"type", "full-square"}};
}

inline Json NeSetToJson(const NashEquilibriumSet& ne) {
  Json comps = Json::array();
  for (const auto& c : ne.components()) comps.push_back(ComponentToJson(c));
  return Json{{"kind", NeKindName(ne.kind())}, {"components", comps}};
}

inline Json RangeToJson(const Range& r) { return Json::array({r.lo, r.hi}); }

inline Json NePayoffsToJson(const std::vector<NePayoffEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    out.push_back(Json{{"component", ComponentToJson(e.component)},
                       {"representative", Json::array({e.representative.p,
                                                       e.representative.q})},
                       {"payoff_a", e.payoff_a},
                       {"payoff_b", e.payoff_b},
                       {"joint", e.joint},
                       {"constant", e.constant},
                       {"range_a", RangeToJson(e.range_a)},
                       {"range_b", RangeToJson(e.range_b)},
                       {"range_joint", RangeToJson(e.range_joint)}});
  }
  return out;
}

inline Json RangeEstimateToJson(const RangeEstimate& r) {
  return Json{{"range", Json::array({r.lo, r.hi})},
              {"lo_state", ArrayToJson(r.lo_state)},
              {"hi_state", ArrayToJson(r.hi_state)}};
}

inline Json OptimizationToJson(const OptimizationResult& r,
                               const LinearProgram& program) {
  Json active = Json::array();
  for (std::size_t i : r.active_constraints) {
    active.push_back(program.constraints()[i].label);
  }
  return Json{{"optimum", RationalToJson(r.optimum)},
              {"witness", ProbVecToJson(r.witness)},
              {"active_constraints", active}};
}

// ---------------------------------------------------------------------------
// Config parsing

namespace internal {

[[noreturn]] inline void ConfigFail(const std::string& why) {
  throw Error(ErrorKind::kConfigParse, why);
}

inline double NumberAt(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    ConfigFail(std::string("missing or non-numeric '") + key + "'");
  }
  return obj[key].get<double>();
}

inline Outcome OutcomeFrom(const Json& cell, const char* label) {
  if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
      !cell[1].is_number()) {
    ConfigFail(std::string("matrix cell ") + label + " must be [payoffA, payoffB]");
  }
  return {cell[0].get<double>(), cell[1].get<double>()};
}

}  // namespace internal

inline ScenarioConfig ParseConfig(const Json& j) {
  using internal::ConfigFail;
  if (!j.is_object()) ConfigFail("config must be a JSON object");
  ScenarioConfig cfg;

  if (!j.contains("game") || !j["game"].is_object()) ConfigFail("missing 'game'");
  const Json& game = j["game"];
  const bool has_params = game.contains("params");
  const bool has_matrix = game.contains("matrix");
  if (has_params == has_matrix) {
    ConfigFail("'game' needs exactly one of 'params' or 'matrix'");
  }
  if (has_params) {
    const Json& p = game["params"];
    if (!p.is_object()) ConfigFail("'params' must be an object");
    cfg.params = InspectionParams{internal::NumberAt(p, "v"), internal::NumberAt(p, "g"),
                                  internal::NumberAt(p, "h"), internal::NumberAt(p, "w")};
    cfg.params->Validate();
  } else {
    const Json& m = game["matrix"];
    if (!m.is_object()) ConfigFail("'matrix' must be an object keyed IW/IS/NW/NS");
    std::array<Outcome, 4> cells;
    for (std::size_t i = 0; i < 4; ++i) {
      const char* label = kOutcomeLabels[i];
      if (!m.contains(label)) ConfigFail(std::string("matrix missing cell ") + label);
      cells[i] = internal::OutcomeFrom(m[label], label);
    }
    cfg.matrix = PayoffMatrix2x2(cells);
  }

  if (!j.contains("state")) ConfigFail("missing 'state' amplitudes");
  const Json& st = j["state"];
  if (!st.is_array() || st.size() != 4) {
    ConfigFail("'state' must list four amplitudes [re, im]");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const Json& z = st[i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      ConfigFail("each amplitude must be [re, im]");
    }
    cfg.amplitudes[i] = Complex(z[0].get<double>(), z[1].get<double>());
  }
  // Validates normalization; the error keeps its own kind.
  (void)cfg.State();

  if (j.contains("analysis")) {
    const Json& a = j["analysis"];
    if (!a.is_object()) ConfigFail("'analysis' must be an object");
    AnalysisFlags& f = cfg.analysis;
    auto flag = [&](const char* key) {
      if (!a.contains(key)) return false;
      if (a[key].is_boolean()) return a[key].get<bool>();
      if (a[key].is_object()) return true;
      ConfigFail(std::string("'") + key + "' must be a boolean or object");
    };
    f.classical = flag("classical");
    f.find_ne = flag("find_ne");
    f.corner_cases = flag("corner_cases");
    f.pareto = flag("pareto");
    f.interior_range = flag("interior_range");
    if (a.contains("quantum_payoff") && !a["quantum_payoff"].is_null()) {
      const Json& qp = a["quantum_payoff"];
      if (!qp.is_object()) ConfigFail("'quantum_payoff' must be {\"p\":..,\"q\":..}");
      try {
        f.quantum_payoff = StrategyProfile::Make(internal::NumberAt(qp, "p"),
                                                 internal::NumberAt(qp, "q"));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kConfigParse) throw;
        ConfigFail(e.what());
      }
    }
    if (f.pareto && a["pareto"].is_object()) {
      const Json& pf = a["pareto"];
      f.pareto_floors = std::array<double, 2>{internal::NumberAt(pf, "floor_a"),
                                              internal::NumberAt(pf, "floor_b")};
    }
    if (f.interior_range && a["interior_range"].is_object()) {
      const Json& ir = a["interior_range"];
      if (ir.contains("samples")) f.interior.samples = ir["samples"].get<std::size_t>();
      if (ir.contains("refinement_steps")) {
        f.interior.refinement_steps = ir["refinement_steps"].get<int>();
      }
      if (ir.contains("seed")) f.interior.seed = ir["seed"].get<std::uint64_t>();
    }
  }
  if (cfg.analysis.pareto && !cfg.params && !cfg.analysis.pareto_floors) {
    ConfigFail("'pareto' on an explicit matrix needs floor_a and floor_b");
  }
  return cfg;
}

inline ScenarioConfig ParseConfigText(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kConfigParse, e.what());
  }
  try {
    return ParseConfig(j);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kConfigParse, e.what());
  }
}

inline ScenarioConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfigParse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfigText(ss.str());
}

inline Json ConfigToJson(const ScenarioConfig& cfg) {
  Json j;
  if (cfg.params) {
    j["game"]["params"] = Json{{"v", cfg.params->v}, {"g", cfg.params->g},
                               {"h", cfg.params->h}, {"w", cfg.params->w}};
  } else {
    j["game"]["matrix"] = MatrixToJson(*cfg.matrix);
  }
  Json st = Json::array();
  for (const Complex& z : cfg.amplitudes) st.push_back(Json::array({z.real(), z.imag()}));
  j["state"] = st;
  const AnalysisFlags& f = cfg.analysis;
  Json a;
  a["classical"] = f.classical;
  a["quantum_payoff"] = f.quantum_payoff
                            ? Json{{"p", f.quantum_payoff->p}, {"q", f.quantum_payoff->q}}
                            : Json(nullptr);
  a["find_ne"] = f.find_ne;
  a["corner_cases"] = f.corner_cases;
  if (f.pareto && f.pareto_floors) {
    a["pareto"] = Json{{"floor_a", (*f.pareto_floors)[0]},
                       {"floor_b", (*f.pareto_floors)[1]}};
  } else {
    a["pareto"] = f.pareto;
  }
  if (f.interior_range) {
    a["interior_range"] = Json{{"samples", f.interior.samples},
                               {"refinement_steps", f.interior.refinement_steps},
                               {"seed", f.interior.seed}};
  } else {
    a["interior_range"] = false;
  }
  j["analysis"] = a;
  return j;
}

// ---------------------------------------------------------------------------
// Analyses

inline Json ClassicalSection(const ScenarioConfig& cfg) {
  const PayoffMatrix2x2 m = cfg.Matrix();
  const BilinearPayoff ca = ClassicalBilinear(m, Player::kA);
  const BilinearPayoff cb = ClassicalBilinear(m, Player::kB);
  Json out;
  out["matrix"] = MatrixToJson(m);
  out["bilinear_a"] = BilinearToJson(ca);
  out["bilinear_b"] = BilinearToJson(cb);
  out["equilibria"] = NeSetToJson(FindEquilibria(ca, cb));
  if (cfg.params) {
    const StrategyProfile ne = ClassicalMixedNe(*cfg.params);
    const PayoffTriple pay = ClassicalNePayoffs(*cfg.params);
    out["mixed_ne"] = Json{{"p", ne.p}, {"q", ne.q}};
    out["ne_payoffs"] = Json{{"a", pay.a}, {"b", pay.b}, {"joint", pay.joint}};
    out["ne_verified"] = VerifyClassicalNe(m, ne, 1e-9);
  }
  return out;
}

inline Json QuantumPayoffSection(const ScenarioConfig& cfg,
                                 const StrategyProfile& profile) {
  const PayoffMatrix2x2 m = cfg.Matrix();
  const QuantumState state = cfg.State();
  const DensityMatrix rho = FinalDensity(state, profile);
  const double ta = TracePayoff(rho, MakePayoffOperator(m, Player::kA));
  const double tb = TracePayoff(rho, MakePayoffOperator(m, Player::kB));
  const BilinearPayoff ba = BilinearCoefficients(m, state, Player::kA);
  const BilinearPayoff bb = BilinearCoefficients(m, state, Player::kB);
  Json out;
  out["profile"] = Json{{"p", profile.p}, {"q", profile.q}};
  out["final_density_diagonal"] = ArrayToJson(rho.DiagonalReal());
  out["trace_payoff"] = Json{{"a", ta}, {"b", tb}, {"joint", ta + tb}};
  out["bilinear_a"] = BilinearToJson(ba);
  out["bilinear_b"] = BilinearToJson(bb);
  out["bilinear_payoff"] = Json{{"a", ba.Evaluate(profile.p, profile.q)},
                                {"b", bb.Evaluate(profile.p, profile.q)}};
  return out;
}

inline Json FindNeSection(const ScenarioConfig& cfg) {
  const PayoffMatrix2x2 m = cfg.Matrix();
  const QuantumState state = cfg.State();
  const NashEquilibriumSet ne = FindEquilibria(m, state);
  Json out;
  out["probabilities"] = ArrayToJson(state.Probabilities());
  out["bilinear_a"] = BilinearToJson(BilinearCoefficients(m, state, Player::kA));
  out["bilinear_b"] = BilinearToJson(BilinearCoefficients(m, state, Player::kB));
  out["equilibria"] = NeSetToJson(ne);
  out["payoffs"] = NePayoffsToJson(NePayoffs(state, m, ne));
  return out;
}

inline bool IsReferenceMatrix(const PayoffMatrix2x2& m) {
  return m == BuildInspectionMatrix(ReferenceParams());
}

inline Json CornerCasesSection(const ScenarioConfig& cfg) {
  const PayoffMatrix2x2 m = cfg.Matrix();
  const QuantumState state = cfg.State();
  const auto x = state.Probabilities();
  const NashEquilibriumSet ne = FindEquilibria(m, state);
  Json out = Json::array();
  for (const Corner& c : kCorners) {
    Json item;
    item["corner"] = CornerName(c);
    Json derived = Json::array();
    bool all_ok = true;
    for (const LinearConstraint& lc : CornerConstraints(m, c)) {
      double lhs = 0.0;
      for (int i = 0; i < 4; ++i) lhs += ToDouble(lc.coeffs[i]) * x[i];
      const bool ok = lhs >= -kZeroTolerance;
      all_ok = all_ok && ok;
      derived.push_back(Json{{"label", lc.label}, {"lhs", lhs}, {"satisfied", ok}});
    }
    item["derived_conditions"] = derived;
    item["satisfied"] = all_ok;
    if (IsReferenceMatrix(m)) {
      const CornerConditionReport rep = CornerConditions(state, c);
      Json lines = Json::array();
      for (const auto& l : rep.inequalities) {
        lines.push_back(Json{{"inequality", l.description}, {"lhs", l.lhs},
                             {"satisfied", l.satisfied}});
      }
      item["reference_conditions"] = Json{{"label", rep.label}, {"inequalities", lines},
                                        {"satisfied", rep.Satisfied()}};
    }
    item["in_equilibrium_set"] = ne.Contains(c.p, c.q, 1e-12);
    Json ranges;
    for (Target t : {Target::kA, Target::kB, Target::kJoint}) {
      const RationalRange r = PayoffRangeForCorner(m, c, t);
      ranges[TargetName(t)] = Json{{"min", RationalToJson(r.min)},
                                   {"max", RationalToJson(r.max)}};
    }
    item["payoff_ranges"] = ranges;
    out.push_back(item);
  }
  return out;
}

inline std::array<Rational, 2> ParetoFloors(const ScenarioConfig& cfg) {
  if (cfg.analysis.pareto_floors) {
    return {RationalFromDouble((*cfg.analysis.pareto_floors)[0]),
            RationalFromDouble((*cfg.analysis.pareto_floors)[1])};
  }
  const PayoffTriple pay = ClassicalNePayoffs(*cfg.params);
  return {RationalFromDouble(pay.a), RationalFromDouble(pay.b)};
}

inline Json ParetoSection(const ScenarioConfig& cfg) {
  const PayoffMatrix2x2 m = cfg.Matrix();
  const auto floors = ParetoFloors(cfg);
  Json out;
  out["floors"] = Json{{"a", RationalToJson(floors[0])}, {"b", RationalToJson(floors[1])}};
  Json corners = Json::array();
  for (const Corner& c : kCorners) {
    Json item{{"corner", CornerName(c)}};
    try {
      const LinearProgram lp = ParetoProgram(m, c, floors[0], floors[1]);
      item["result"] = OptimizationToJson(MaximizeLinear(lp), lp);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasibleProgram) throw;
      item["result"] = nullptr;
      item["infeasible"] = true;
    }
    corners.push_back(item);
  }
  out["corners"] = corners;
  Json edges = Json::array();
  for (EdgeFamily f : kEdgeFamilies) {
    const EdgeParetoResult r = EdgeParetoScan(m, f, floors[0], floors[1], kEdgeScanGrid);
    Json item{{"family", EdgeFamilyName(f)}, {"grid", kEdgeScanGrid}, {"feasible", r.feasible}};
    if (r.feasible) {
      item["best_joint"] = RationalToJson(r.best_joint);
      item["mix"] = RationalToJson(r.mix);
      item["witness"] = ProbVecToJson(r.witness);
    }
    edges.push_back(item);
  }
  out["edge_families"] = edges;
  return out;
}

inline Json InteriorSection(const ScenarioConfig& cfg) {
  InteriorRangeOptions opt = cfg.analysis.interior;
  if (cfg.analysis.pareto_floors) {
    opt.floor_a = (*cfg.analysis.pareto_floors)[0];
    opt.floor_b = (*cfg.analysis.pareto_floors)[1];
  } else if (cfg.params) {
    const PayoffTriple pay = ClassicalNePayoffs(*cfg.params);
    opt.floor_a = pay.a;
    opt.floor_b = pay.b;
  }
  const InteriorRangeResult r = InteriorPayoffRange(cfg.Matrix(), opt);
  Json out;
  out["samples"] = r.samples;
  out["feasible_samples"] = r.feasible_samples;
  out["seed"] = opt.seed;
  out["refinement_steps"] = opt.refinement_steps;
  out["a"] = RangeEstimateToJson(r.a);
  out["b"] = RangeEstimateToJson(r.b);
  out["joint"] = RangeEstimateToJson(r.joint);
  out["floors"] = Json::array({opt.floor_a, opt.floor_b});
  out["floored_joint_max"] =
      r.floored_joint_max ? Json(*r.floored_joint_max) : Json(nullptr);
  out["note"] = r.note;
  return out;
}

struct ReportDocument {
  Json json;
  bool pass = true;
  std::string summary;  // plain-text table, reproduce only

  std::string Dump() const { return json.dump(2) + "\n"; }
};

inline Json ToleranceBlock() {
  return Json{{"normalization", kNormalizationTolerance},
              {"zero_coefficient", kZeroTolerance},
              {"payoff_constancy", kConstancyTolerance},
              {"trace_imaginary", kTraceImagTolerance},
              {"linear_programs", "exact rational"}};
}

// Runs every analysis the config requests.
inline ReportDocument RunScenario(const ScenarioConfig& cfg) {
  ReportDocument doc;
  Json& j = doc.json;
  j["tool"] = "qinspect";
  j["version"] = kReportVersion;
  j["config"] = ConfigToJson(cfg);
  j["tolerances"] = ToleranceBlock();
  Json results = Json::object();
  const AnalysisFlags& f = cfg.analysis;
  if (f.classical) results["classical"] = ClassicalSection(cfg);
  if (f.quantum_payoff) results["quantum_payoff"] = QuantumPayoffSection(cfg, *f.quantum_payoff);
  if (f.find_ne) results["find_ne"] = FindNeSection(cfg);
  if (f.corner_cases) results["corner_cases"] = CornerCasesSection(cfg);
  if (f.pareto) results["pareto"] = ParetoSection(cfg);
  if (f.interior_range) results["interior_range"] = InteriorSection(cfg);
  j["results"] = results;
  return doc;
}

}  // namespace qinspect

#endif  // QINSPECT_SCENARIO_HPP_
