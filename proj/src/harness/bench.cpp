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

#include "maprelay/harness/bench.hpp"

#include <cstdio>
#include <sstream>

#include "maprelay/chain/chain.hpp"
#include "maprelay/common/error.hpp"
#include "maprelay/lc/light_client.hpp"
#include "maprelay/prover/prover.hpp"

namespace maprelay::harness {

GasBench measure_gas(std::uint64_t validators, std::uint64_t receipts, const lc::GasCostTable& table) {
  chain::ChainConfig cfg;
  cfg.chain_id = 1;
  cfg.epoch_size = 2;
  for (std::uint64_t i = 0; i < validators; ++i) {
    cfg.validators.push_back({"bench-v" + std::to_string(i), 10});
  }
  chain::Chain c(cfg);
  for (std::uint64_t i = 0; i < receipts; ++i) {
    c.submit_tx({1, 2, i, chain::AssetPayload{"USDC", 10 * i + 1, "transfer"}});
  }
  c.produce_block(1);
  c.produce_block(2);
  auto params = prover::params_of(cfg);
  auto ns = lc::lc_setup(params, c.validator_set(0), table);
  auto hs = lc::hlc_setup(params, c.validator_set(0), table);
  GasBench g;
  g.validators = validators;
  g.normal_setup = ns.gas.total;
  g.hybrid_setup = hs.gas.total;

  const chain::Block& b = c.block(1);
  auto conf = c.confirm(b.tx_hashes[receipts / 2]);
  g.merkle_depth = conf.proof.path.size();
  auto zk = prover::prove_header(c, conf.header);
  auto nv = lc::lc_verify(ns.state, conf.receipt, conf.header, conf.proof, table);
  auto hv = lc::hlc_verify(hs.state, conf.receipt, conf.header, conf.proof, zk, table);
  MAPRELAY_ENFORCE(nv.accepted && hv.accepted, ErrorCode::kInvalidArgument,
                   "bench verification was rejected");
  g.normal_verify = nv.gas.total;
  g.hybrid_verify = hv.gas.total;

  const chain::BlockHeader& t = c.block(2).header;
  auto nu = lc::lc_update(ns.state, t, table);
  auto hu = lc::hlc_update(hs.state, t, prover::prove_header(c, t), table);
  MAPRELAY_ENFORCE(nu.ok() && hu.ok(), ErrorCode::kInvalidArgument, "bench update was rejected");
  g.normal_update = nu.gas.total;
  g.hybrid_update = hu.gas.total;
  return g;
}

std::vector<GateRow> gate_rows(const prover::GateCostTable& table) {
  const auto targets = prover::default_calibration_targets();
  std::vector<GateRow> rows;
  for (std::uint64_t n : {4, 8, 16, 32}) {
    GateRow r;
    r.signers = n;
    r.split = prover::gate_report(n, prover::CircuitMode::kSplit, table).total;
    r.baseline = prover::gate_report(n, prover::CircuitMode::kBaseline, table).total;
    auto it = targets.split.find(n);
    if (it != targets.split.end()) r.target = it->second;
    rows.push_back(r);
  }
  return rows;
}

bool BenchReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

BenchReport bench(const lc::GasCostTable& gas, const prover::GateCostTable& gates) {
  BenchReport r;
  r.gas = measure_gas(100, 16, gas);
  r.gates = gate_rows(gates);
  for (std::uint64_t n = 2; n <= 10; ++n) {
    r.pairwise.push_back(relay::deployment_plan(n, relay::Topology::kPairwise, 100, gas));
    r.relayed.push_back(relay::deployment_plan(n, relay::Topology::kRelayed, 100, gas));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "hybrid %llu / normal %llu = %.4f",
                static_cast<unsigned long long>(r.gas.hybrid_verify),
                static_cast<unsigned long long>(r.gas.normal_verify), r.gas.verify_ratio());
  r.checks.push_back({"verify-gas-ratio<=0.70", r.gas.verify_ratio() <= 0.70, buf});
  for (const auto& g : r.gates) {
    if (g.signers != 8) continue;
    double q = static_cast<double>(g.split) / static_cast<double>(g.baseline);
    std::snprintf(buf, sizeof buf, "split %llu / baseline %llu = %.4f",
                  static_cast<unsigned long long>(g.split),
                  static_cast<unsigned long long>(g.baseline), q);
    r.checks.push_back({"gate-ratio-8-in-[0.75,0.80]", q >= 0.75 && q <= 0.80, buf});
  }
  const auto& p3 = r.pairwise[1];
  const auto& r3 = r.relayed[1];
  std::snprintf(buf, sizeof buf, "instances %llu vs %llu, gas %llu vs %llu",
                static_cast<unsigned long long>(p3.lc_instances),
                static_cast<unsigned long long>(r3.lc_instances),
                static_cast<unsigned long long>(p3.deployment_gas),
                static_cast<unsigned long long>(r3.deployment_gas));
  r.checks.push_back({"deployment-N=3",
                      p3.lc_instances == 6 && r3.lc_instances == 6 &&
                          p3.deployment_gas == 60'000'000 && r3.deployment_gas == 600'000,
                      buf});
  return r;
}

nlohmann::json BenchReport::to_json() const {
  nlohmann::json g = {{"validators", gas.validators},       {"merkle_depth", gas.merkle_depth},
                      {"normal_setup", gas.normal_setup},   {"hybrid_setup", gas.hybrid_setup},
                      {"normal_update", gas.normal_update}, {"hybrid_update", gas.hybrid_update},
                      {"normal_verify", gas.normal_verify}, {"hybrid_verify", gas.hybrid_verify},
                      {"verify_ratio", gas.verify_ratio()}};
  nlohmann::json gt = nlohmann::json::array();
  for (const auto& r : gates) {
    gt.push_back({{"signers", r.signers}, {"split", r.split}, {"baseline", r.baseline}, {"target", r.target}});
  }
  nlohmann::json d = nlohmann::json::array();
  for (std::size_t i = 0; i < pairwise.size(); ++i) {
    d.push_back({{"chains", pairwise[i].chains},
                 {"pairwise_instances", pairwise[i].lc_instances},
                 {"pairwise_gas", pairwise[i].deployment_gas},
                 {"relayed_instances", relayed[i].lc_instances},
                 {"relayed_gas", relayed[i].deployment_gas}});
  }
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"gas", g}, {"gates", gt}, {"deployment", d}, {"checks", cs}};
}

std::string BenchReport::tables() const {
  std::ostringstream o;
  char buf[200];
  std::snprintf(buf, sizeof buf, "Light-client gas (%llu validators, Merkle depth %llu)\n",
                static_cast<unsigned long long>(gas.validators),
                static_cast<unsigned long long>(gas.merkle_depth));
  o << buf;
  std::snprintf(buf, sizeof buf, "%-8s %12s %12s %12s\n", "", "setup", "update", "verify");
  o << buf;
  auto row = [&](const char* name, std::uint64_t s, std::uint64_t u, std::uint64_t v) {
    std::snprintf(buf, sizeof buf, "%-8s %12llu %12llu %12llu\n", name, static_cast<unsigned long long>(s),
                  static_cast<unsigned long long>(u), static_cast<unsigned long long>(v));
    o << buf;
  };
  row("normal", gas.normal_setup, gas.normal_update, gas.normal_verify);
  row("hybrid", gas.hybrid_setup, gas.hybrid_update, gas.hybrid_verify);
  std::snprintf(buf, sizeof buf, "verify ratio %.4f\n\n", gas.verify_ratio());
  o << buf;

  o << "Circuit gates\n";
  std::snprintf(buf, sizeof buf, "%8s %12s %12s %8s %12s %9s\n", "signers", "split", "baseline",
                "ratio", "reported", "error");
  o << buf;
  for (const auto& g : gates) {
    double err = g.target > 0 ? 100.0 * (static_cast<double>(g.split) - g.target) / g.target : 0;
    std::snprintf(buf, sizeof buf, "%8llu %12llu %12llu %8.4f %12.0f %8.2f%%\n",
                  static_cast<unsigned long long>(g.signers), static_cast<unsigned long long>(g.split),
                  static_cast<unsigned long long>(g.baseline),
                  static_cast<double>(g.split) / static_cast<double>(g.baseline), g.target, err);
    o << buf;
  }
  o << "\nDeployment\n";
  std::snprintf(buf, sizeof buf, "%4s %10s %16s %10s %14s\n", "N", "pairwise", "pairwise gas",
                "relayed", "relayed gas");
  o << buf;
  for (std::size_t i = 0; i < pairwise.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%4llu %10llu %16llu %10llu %14llu\n",
                  static_cast<unsigned long long>(pairwise[i].chains),
                  static_cast<unsigned long long>(pairwise[i].lc_instances),
                  static_cast<unsigned long long>(pairwise[i].deployment_gas),
                  static_cast<unsigned long long>(relayed[i].lc_instances),
                  static_cast<unsigned long long>(relayed[i].deployment_gas));
    o << buf;
  }
  o << "\n";
  for (const auto& c : checks) o << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
  return o.str();
}

}  // namespace maprelay::harness
