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

// Command-line front end: one subcommand per analysis, JSON in and out.
//
// Exit codes: 0 success, 1 analysis failure (golden mismatch or infeasible
// program), 2 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qinspect/reproduce.hpp"
#include "qinspect/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysisFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tolerance;
  std::optional<double> p;
  std::optional<double> q;
  std::string summary;
};

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw qinspect::Error(qinspect::ErrorKind::kConfigParse,
                          "cannot write " + path);
  }
  out << text;
}

int ExitCodeFor(const qinspect::Error& e) {
  return e.kind() == qinspect::ErrorKind::kInfeasibleProgram
             ? kExitAnalysisFailure
             : kExitInputError;
}

// Loads the config and keeps only the analysis named by the subcommand.
qinspect::ScenarioConfig ConfigFor(const std::string& command,
                                   const CommonOptions& opt) {
  qinspect::ScenarioConfig cfg = qinspect::LoadConfigFile(opt.config);
  qinspect::AnalysisFlags& f = cfg.analysis;
  if (command == "run") return cfg;
  const auto pareto_floors = f.pareto_floors;
  const auto interior = f.interior;
  const auto payoff = f.quantum_payoff;
  f = qinspect::AnalysisFlags{};
  f.pareto_floors = pareto_floors;
  f.interior = interior;
  if (command == "classical") f.classical = true;
  if (command == "find-ne") f.find_ne = true;
  if (command == "corner-cases") f.corner_cases = true;
  if (command == "pareto") {
    f.pareto = true;
    if (!cfg.params && !f.pareto_floors) {
      throw qinspect::Error(qinspect::ErrorKind::kConfigParse,
                            "pareto on an explicit matrix needs floor_a/floor_b");
    }
  }
  if (command == "interior-range") {
    f.interior_range = true;
    if (opt.seed) f.interior.seed = *opt.seed;
    if (opt.samples) f.interior.samples = *opt.samples;
  }
  if (command == "payoff") {
    const double p = opt.p ? *opt.p : payoff ? payoff->p : -1.0;
    const double q = opt.q ? *opt.q : payoff ? payoff->q : -1.0;
    try {
      f.quantum_payoff = qinspect::StrategyProfile::Make(p, q);
    } catch (const qinspect::Error&) {
      throw qinspect::Error(qinspect::ErrorKind::kConfigParse,
                            "payoff needs p and q in [0,1] (config "
                            "analysis.quantum_payoff or --p/--q)");
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum inspection game solver"};
  app.require_subcommand(1);
  CommonOptions opt;

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "Report path (default: stdout)");
  };
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario JSON")->required();
    add_output(sub);
    sub->add_option("--tolerance", opt.tolerance, "Comparison tolerance");
  };

  for (const char* name : {"classical", "find-ne", "corner-cases", "pareto", "run"}) {
    add_config(app.add_subcommand(name, std::string("Run the ") + name + " analysis"));
  }
  CLI::App* payoff = app.add_subcommand("payoff", "Quantum payoffs at a profile");
  add_config(payoff);
  payoff->add_option("--p", opt.p, "Employer's probability of I");
  payoff->add_option("--q", opt.q, "Worker's probability of W");

  CLI::App* interior =
      app.add_subcommand("interior-range", "Payoff ranges at interior equilibria");
  add_config(interior);
  interior->add_option("--seed", opt.seed, "Sampling seed");
  interior->add_option("--samples", opt.samples, "Number of simplex samples");

  CLI::App* reproduce =
      app.add_subcommand("reproduce", "Recompute all reference results and compare");
  add_output(reproduce);
  reproduce->add_option("--seed", opt.seed, "Sampling seed");
  reproduce->add_option("--samples", opt.samples, "Number of simplex samples");
  reproduce->add_option("--tolerance", opt.tolerance, "Comparison tolerance");
  reproduce->add_option("--summary", opt.summary,
                        "Write the summary table here (default: stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "reproduce") {
      qinspect::ReproduceOptions ro;
      if (opt.seed) ro.seed = *opt.seed;
      if (opt.samples) ro.samples = *opt.samples;
      if (opt.tolerance) ro.tolerance = *opt.tolerance;
      const qinspect::ReportDocument doc = qinspect::ReproduceReference(ro);
      WriteOutput(opt.output, doc.Dump());
      if (opt.summary.empty()) {
        std::cerr << doc.summary;
      } else {
        WriteOutput(opt.summary, doc.summary);
      }
      return doc.pass ? kExitOk : kExitAnalysisFailure;
    }
    const qinspect::ScenarioConfig cfg = ConfigFor(command, opt);
    qinspect::ReportDocument doc = qinspect::RunScenario(cfg);
    if (opt.tolerance) doc.json["tolerances"]["comparison"] = *opt.tolerance;
    WriteOutput(opt.output, doc.Dump());
    return kExitOk;
  } catch (const qinspect::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
