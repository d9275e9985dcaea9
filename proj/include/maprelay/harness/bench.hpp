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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "maprelay/lc/gas.hpp"
#include "maprelay/prover/zk.hpp"
#include "maprelay/relay/relay_chain.hpp"

namespace maprelay::harness {

// Measured light-client gas for one source set size. Verification is of a
// receipt in a block of `receipts` receipts.
struct GasBench {
  std::uint64_t validators = 0;
  std::uint64_t merkle_depth = 0;
  std::uint64_t normal_setup = 0, hybrid_setup = 0;
  std::uint64_t normal_update = 0, hybrid_update = 0;
  std::uint64_t normal_verify = 0, hybrid_verify = 0;
  double verify_ratio() const {
    return static_cast<double>(hybrid_verify) / static_cast<double>(normal_verify);
  }
};
GasBench measure_gas(std::uint64_t validators = 100, std::uint64_t receipts = 16,
                     const lc::GasCostTable& table = {});

struct GateRow {
  std::uint64_t signers = 0;
  std::uint64_t split = 0;
  std::uint64_t baseline = 0;
  double target = 0;  // reported split size, 0 when none
};
std::vector<GateRow> gate_rows(const prover::GateCostTable& table = {});

struct BenchReport {
  GasBench gas;
  std::vector<GateRow> gates;
  std::vector<relay::DeploymentPlan> pairwise, relayed;  // N = 2..10

  struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Check> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string tables() const;
};

BenchReport bench(const lc::GasCostTable& gas = {}, const prover::GateCostTable& gates = {});

}  // namespace maprelay::harness
