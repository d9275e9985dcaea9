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
#include "maprelay/mos/service.hpp"
#include "maprelay/relay/network.hpp"

namespace maprelay::harness {

struct ChainSpec {
  chain::ChainConfig config;
  bool source = true;
  bool dest = true;
};

enum class CorruptionKind { kWithhold, kCollude };
std::string_view to_string(CorruptionKind k);

// A fraction of a chain's stake under adversarial control. Corrupted
// validators are taken in canonical set order until their weight reaches
// fraction (num/den) of the total.
struct Corruption {
  chain::ChainId chain = 0;
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  CorruptionKind kind = CorruptionKind::kWithhold;
};

struct Workload {
  std::uint64_t count = 100;
  std::uint64_t per_tick = 10;  // submissions between consecutive ticks
  std::uint64_t asset_percent = 50;
  std::uint64_t max_amount = 100'000;
  std::vector<std::string> tokens{"USDC", "ETH", "MAP"};
};

struct Scenario {
  std::string name = "default";
  std::uint64_t seed = 1;
  chain::ChainConfig relay_chain;
  std::vector<ChainSpec> chains;
  std::vector<relay::ProverSpec> provers;
  std::vector<Corruption> corruption;
  Workload workload;
  lc::GasCostTable gas;
  mos::PricingConfig pricing;
  std::uint64_t horizon_ticks = 70;
  std::uint64_t max_ticks = 2000;

  nlohmann::json to_json() const;
};

// Every violated constraint, one message each. Empty when valid.
std::vector<std::string> validate(const Scenario& s);
// Parses and validates. Throws kConfig with every problem found.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

// Three chains of `validators` validators (5M stake each) around a
// 10-validator RC staking 7M in total, one honest prover.
Scenario default_scenario(std::uint64_t ctx_count = 100, std::size_t validators = 4);

}  // namespace maprelay::harness
