// Copyright 2026 The maprelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "maprelay/common/error.hpp"
#include "maprelay/harness/attacks.hpp"
#include "maprelay/harness/bench.hpp"
#include "maprelay/harness/runner.hpp"
#include "maprelay/harness/scenario.hpp"
#include "maprelay/relay/relay_chain.hpp"

namespace {

using namespace maprelay;
using namespace maprelay::harness;

struct Common {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("-s,--scenario", c.scenario, "scenario file (JSON); default scenario if omitted");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  if (with_out) cmd->add_option("-o,--out", c.out, "output directory");
}

Scenario scenario_of(const Common& c) {
  Scenario s = c.scenario.empty() ? default_scenario() : load_scenario(c.scenario);
  if (c.seed) s.seed = *c.seed;
  return s;
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
  f << body;
  MAPRELAY_ENFORCE(f.good(), ErrorCode::kInvalidArgument, "cannot write " + name);
}

// Liveness is only owed when some prover is honest and no chain withholds a
// third or more of its stake.
bool liveness_owed(const Scenario& s) {
  bool honest = false;
  for (const auto& p : s.provers) honest = honest || p.fault == relay::ProverFault::kHonest;
  for (const auto& c : s.corruption) {
    if (c.kind == CorruptionKind::kWithhold && 3 * c.num >= c.den) return false;
  }
  return honest;
}

int report_run(const Scenario& s, const RunArtifacts& a, const std::string& out) {
  if (!out.empty()) write_artifacts(a, out);
  std::cout << a.tables;
  std::cout << "submitted " << a.submitted << ", confirmed-DC " << a.confirmed_dc << ", stalled "
            << a.stalled.size() << ", unbacked " << a.unbacked.size() << ", ticks " << a.ticks
            << "\n";
  int rc = 0;
  if (!a.consistency_held()) {
    std::cerr << "violation: consistency (" << a.unbacked.size() << " unbacked, "
              << a.status_regressions << " status regressions)\n";
    rc = 1;
  }
  if (liveness_owed(s) && !a.liveness_held()) {
    std::cerr << "violation: liveness (" << a.stalled.size() << " stalled)\n";
    rc = 1;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maprelay: relay-chain cross-chain simulator"};
  app.require_subcommand(1);

  Common run_opts;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and write its artifacts");
  add_common(run_cmd, run_opts);

  Common atk_opts;
  std::uint64_t forgeries = 1000;
  auto* atk_cmd = app.add_subcommand("attack", "liveness, consistency and collusion attacks");
  add_common(atk_cmd, atk_opts);
  atk_cmd->add_option("--forgeries", forgeries, "size of the forgery corpus")
      ->check(CLI::PositiveNumber);

  Common rep_opts;
  std::string dataset;
  auto* rep_cmd = app.add_subcommand("replay", "replay a transaction dataset");
  add_common(rep_cmd, rep_opts);
  rep_cmd->add_option("-d,--dataset", dataset, "CSV dataset")->required();

  Common bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "gas, gate and deployment tables");
  add_common(bench_cmd, bench_opts);

  std::uint64_t chains = 0, validators = 100;
  std::string topology = "both";
  auto* plan_cmd = app.add_subcommand("plan", "deployment plan for N chains");
  plan_cmd->add_option("-n,--chains", chains, "number of chains")->required()
      ->check(CLI::Range(2, 100000));
  plan_cmd->add_option("-t,--topology", topology, "pairwise | relayed | both")
      ->check(CLI::IsMember({"pairwise", "relayed", "both"}));
  plan_cmd->add_option("--validators", validators, "validators per chain");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      Scenario s = scenario_of(run_opts);
      return report_run(s, run(s), run_opts.out);
    }
    if (*rep_cmd) {
      Scenario s = scenario_of(rep_opts);
      return report_run(s, replay(s, load_dataset(dataset)), rep_opts.out);
    }
    if (*atk_cmd) {
      Scenario s = scenario_of(atk_opts);
      ConsistencyVariant cv;
      cv.forgeries = forgeries;
      cv.seed = s.seed;
      AttackSuite suite = attack_suite(s, cv);
      std::string body = suite.to_json().dump(2) + "\n";
      if (!atk_opts.out.empty()) write_file(atk_opts.out, "attacks.json", body);
      std::cout << body;
      if (!suite.covers_all_cases()) std::cerr << "violation: attack coverage incomplete\n";
      if (!suite.all_as_expected()) std::cerr << "violation: an attack verdict was unexpected\n";
      return suite.covers_all_cases() && suite.all_as_expected() ? 0 : 1;
    }
    if (*bench_cmd) {
      Scenario s = scenario_of(bench_opts);
      BenchReport r = bench(s.gas);
      if (!bench_opts.out.empty()) {
        write_file(bench_opts.out, "bench.json", r.to_json().dump(2) + "\n");
        write_file(bench_opts.out, "bench.txt", r.tables());
      }
      std::cout << r.tables();
      return r.all_pass() ? 0 : 1;
    }
    if (*plan_cmd) {
      std::cout << "topology   chains  lc_instances  deployment_gas\n";
      for (auto t : {relay::Topology::kPairwise, relay::Topology::kRelayed}) {
        if (topology != "both" && topology != relay::to_string(t)) continue;
        auto p = relay::deployment_plan(chains, t, validators);
        std::cout << std::left << std::setw(11) << relay::to_string(t) << std::right
                  << std::setw(6) << p.chains << std::setw(14) << p.lc_instances
                  << std::setw(16) << p.deployment_gas << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
