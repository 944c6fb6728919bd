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

#include "qinspect/scenario.hpp"

#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "qinspect/reproduce.hpp"

#ifndef QINSPECT_TEST_DATA
#define QINSPECT_TEST_DATA "tests/data"
#endif

namespace qinspect {
namespace {

std::string DataPath(const std::string& name) {
  return std::string(QINSPECT_TEST_DATA) + "/" + name;
}

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidState;
}

TEST(ParseConfig, Errors) {
  EXPECT_EQ(KindOf([] { LoadConfigFile(DataPath("missing_state.json")); }),
            ErrorKind::kConfigParse);
  EXPECT_EQ(KindOf([] { LoadConfigFile(DataPath("truncated.json")); }),
            ErrorKind::kConfigParse);
  EXPECT_EQ(KindOf([] { LoadConfigFile(DataPath("no_such_file.json")); }),
            ErrorKind::kConfigParse);
  EXPECT_EQ(KindOf([] { LoadConfigFile(DataPath("unnormalized.json")); }),
            ErrorKind::kNotNormalized);
  EXPECT_EQ(KindOf([] { LoadConfigFile(DataPath("bad_params.json")); }),
            ErrorKind::kInvalidParameters);
  EXPECT_EQ(KindOf([] { LoadConfigFile(DataPath("matrix_pareto_no_floors.json")); }),
            ErrorKind::kConfigParse);
  EXPECT_EQ(KindOf([] {
              ParseConfigText(R"({"game": {"params": {"v":60,"g":15,"h":8,"w":20},
                                           "matrix": {}},
                                  "state": [[1,0],[0,0],[0,0],[0,0]]})");
            }),
            ErrorKind::kConfigParse);
  EXPECT_EQ(KindOf([] {
              ParseConfigText(R"({"game": {"params": {"v":60,"g":15,"h":8,"w":20}},
                                  "state": [[1,0],[0,0],[0,0]]})");
            }),
            ErrorKind::kConfigParse);
  EXPECT_EQ(KindOf([] {
              ParseConfigText(R"({"game": {"params": {"v":60,"g":15,"h":8,"w":20}},
                                  "state": [[1,0],[0,0],[0,0],[0,0]],
                                  "analysis": {"quantum_payoff": {"p": 2, "q": 0}}})");
            }),
            ErrorKind::kConfigParse);
}

TEST(ParseConfig, RoundTrip) {
  for (const char* name : {"iw_state.json", "bell.json", "full.json", "matrix_game.json"}) {
    const ScenarioConfig cfg = LoadConfigFile(DataPath(name));
    const Json echoed = ConfigToJson(cfg);
    const ScenarioConfig again = ParseConfig(echoed);
    EXPECT_EQ(ConfigToJson(again), echoed) << name;
    EXPECT_EQ(again.Matrix(), cfg.Matrix()) << name;
    EXPECT_EQ(again.amplitudes, cfg.amplitudes) << name;
  }
  // The echoed config inside a report also re-parses.
  const ScenarioConfig cfg = LoadConfigFile(DataPath("bell.json"));
  const ReportDocument doc = RunScenario(cfg);
  EXPECT_EQ(ConfigToJson(ParseConfig(doc.json["config"])), doc.json["config"]);
}

TEST(RunScenario, IwStateReproducesClassicalGame) {
  const ReportDocument doc = RunScenario(LoadConfigFile(DataPath("iw_state.json")));
  const Json& r = doc.json["results"];
  EXPECT_EQ(r["classical"]["mixed_ne"], (Json{{"p", 0.75}, {"q", 0.6}}));
  EXPECT_EQ(r["classical"]["ne_verified"], true);
  const Json& ne = r["find_ne"]["equilibria"];
  EXPECT_EQ(ne["kind"], "point");
  EXPECT_NEAR(ne["components"][0]["p"].get<double>(), 0.75, 1e-12);
  EXPECT_NEAR(ne["components"][0]["q"].get<double>(), 0.6, 1e-12);
  const Json& pay = r["find_ne"]["payoffs"][0];
  EXPECT_NEAR(pay["payoff_a"].get<double>(), 16, 1e-9);
  EXPECT_NEAR(pay["payoff_b"].get<double>(), 5, 1e-9);
  EXPECT_FALSE(r.contains("pareto"));
}

TEST(RunScenario, BellStatePayoffs) {
  const ReportDocument doc = RunScenario(LoadConfigFile(DataPath("bell.json")));
  const Json& qp = doc.json["results"]["quantum_payoff"];
  EXPECT_NEAR(qp["trace_payoff"]["a"].get<double>(), 11, 1e-10);
  EXPECT_NEAR(qp["trace_payoff"]["b"].get<double>(), 7.5, 1e-10);
  EXPECT_NEAR(qp["bilinear_payoff"]["a"].get<double>(), 11, 1e-10);
  EXPECT_NEAR(qp["bilinear_payoff"]["b"].get<double>(), 7.5, 1e-10);
}

TEST(RunScenario, FullReportSections) {
  const ReportDocument doc = RunScenario(LoadConfigFile(DataPath("full.json")));
  const Json& r = doc.json["results"];
  for (const char* key :
       {"classical", "quantum_payoff", "find_ne", "corner_cases", "pareto", "interior_range"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  const Json& c11 = r["corner_cases"][0];
  EXPECT_EQ(c11["corner"], "(1,1)");
  EXPECT_EQ(c11["satisfied"], true);
  EXPECT_EQ(c11["reference_conditions"]["label"], "C1");
  EXPECT_EQ(c11["in_equilibrium_set"], true);
  EXPECT_EQ(c11["payoff_ranges"]["A"]["max"],
            (Json{{"num", 58}, {"den", 3}, {"decimal", 58.0 / 3.0}}));
  for (const Json& c : r["pareto"]["corners"]) {
    EXPECT_EQ(c["result"]["optimum"]["num"], 21) << c["corner"];
    EXPECT_EQ(c["result"]["optimum"]["den"], 1);
  }
  for (const Json& e : r["pareto"]["edge_families"]) {
    if (e["feasible"].get<bool>()) {
      EXPECT_LE(e["best_joint"]["decimal"].get<double>(), 21.0) << e["family"];
    }
  }
  EXPECT_EQ(r["interior_range"]["seed"], 7);
  EXPECT_EQ(doc.json["tolerances"]["linear_programs"], "exact rational");
}

TEST(RunScenario, ExplicitMatrixGame) {
  const ReportDocument doc = RunScenario(LoadConfigFile(DataPath("matrix_game.json")));
  const Json& r = doc.json["results"];
  EXPECT_EQ(r["find_ne"]["equilibria"]["kind"], "full-square");
  EXPECT_EQ(r["pareto"]["floors"]["a"]["num"], 1);
  EXPECT_FALSE(r.contains("corner_cases"));
}

TEST(RunScenario, Deterministic) {
  const ScenarioConfig cfg = LoadConfigFile(DataPath("full.json"));
  EXPECT_EQ(RunScenario(cfg).Dump(), RunScenario(cfg).Dump());
}

TEST(RationalJson, LargeValuesFallBackToStrings) {
  const Rational big = Rational(boost::multiprecision::cpp_int("123456789012345678901234567891"), 1024);
  const Json j = RationalToJson(big);
  EXPECT_EQ(j["num"], "123456789012345678901234567891");
  EXPECT_EQ(j["den"], "1024");
  EXPECT_EQ(RationalToJson(Rational(-5, 2)), (Json{{"num", -5}, {"den", 2}, {"decimal", -2.5}}));
}

const Json& Item(const Json& items, const std::string& name) {
  for (const Json& it : items) {
    if (it["name"] == name) return it;
  }
  static const Json kMissing = Json{{"name", "missing"}, {"pass", false}};
  ADD_FAILURE() << "no item " << name;
  return kMissing;
}

TEST(Reproduce, GoldenItems) {
  ReproduceOptions opt;
  opt.samples = 10000;
  opt.refinement_steps = 20;
  const ReportDocument doc = ReproduceReference(opt);
  const Json& items = doc.json["items"];
  EXPECT_EQ(Item(items, "classical NE payoffs")["pass"], true);
  EXPECT_EQ(Item(items, "classical NE payoffs")["actual"], Json::array({16.0, 5.0, 21.0}));
  EXPECT_EQ(Item(items, "corner (1,1) Pareto max, payoffs at optimum")["pass"], true);
  const Json& six = Item(items, "state (|IS>+|NS>)/sqrt2");
  EXPECT_EQ(six["pass"], true);
  EXPECT_EQ(six["actual"]["equilibria"]["components"][0]["fixed_value"], 1.0);
  EXPECT_NEAR(six["actual"]["payoffs"][0].get<double>(), -14.0, 1e-9);
  EXPECT_NEAR(six["actual"]["payoffs"][1].get<double>(), 10.0, 1e-9);
  for (const Json& it : items) {
    const std::string name = it["name"];
    if (name.rfind("interior NE range", 0) == 0) continue;
    EXPECT_EQ(it["pass"], true) << name;
  }
  EXPECT_EQ(Item(items, "interior NE floored joint max <= 21")["pass"], true);
  EXPECT_EQ(doc.json["pass"], doc.pass);
  EXPECT_NE(doc.summary.find("overall: "), std::string::npos);
}

TEST(Reproduce, DeterministicBySeed) {
  ReproduceOptions opt;
  opt.samples = 10000;
  opt.refinement_steps = 10;
  EXPECT_EQ(ReproduceReference(opt).Dump(), ReproduceReference(opt).Dump());
}

}  // namespace
}  // namespace qinspect
