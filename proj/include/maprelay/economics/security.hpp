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
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "maprelay/chain/chain.hpp"

namespace maprelay::relay {
class Network;
}

namespace maprelay::economics {

// Stakes of one chain. tau = 2S/3 is kept exactly as 2S thirds.
class StakeLedger {
 public:
  StakeLedger() = default;
  StakeLedger(chain::ChainId chain, std::vector<std::uint64_t> stakes);
  // Ledger of a chain's validator weights.
  static StakeLedger from_config(const chain::ChainConfig& cfg);

  chain::ChainId chain() const { return chain_; }
  const std::vector<std::uint64_t>& stakes() const { return stakes_; }
  void set_stake(std::size_t validator, std::uint64_t stake);
  void add_validator(std::uint64_t stake);

  std::uint64_t total() const { return total_; }
  // tau in thirds of a value unit, i.e. 2S.
  std::uint64_t tau_thirds() const { return 2 * total_; }
  double tau() const { return static_cast<double>(tau_thirds()) / 3.0; }

 private:
  void recompute();
  chain::ChainId chain_ = 0;
  std::vector<std::uint64_t> stakes_;
  std::uint64_t total_ = 0;
};

// min tau over `chains`, in thirds. Throws kInvalidArgument when empty.
std::uint64_t network_security_thirds(const std::vector<StakeLedger>& chains);
double network_security(const std::vector<StakeLedger>& chains);

struct TxSafety {
  bool safe = true;
  std::int64_t margin_thirds = 0;  // 3 * (security - V)
  std::uint64_t weakest_chain = 0;
  double margin() const { return static_cast<double>(margin_thirds) / 3.0; }
};
// Safe iff V <= min tau over the path.
TxSafety check_tx_safety(std::uint64_t value, const std::vector<StakeLedger>& path);

struct ValuedCtx {
  chain::CtxKey key;
  std::uint64_t value = 0;
  std::vector<chain::ChainId> path;  // every chain the ctx crosses
};

struct CtxVerdict {
  chain::CtxKey key;
  std::uint64_t value = 0;
  TxSafety safety;
};

struct DegradationReport {
  std::vector<CtxVerdict> verdicts;
  std::uint64_t max_value = 0;
  double max_value_over_stake = 0;  // max V / S of the weakest chain on its path
  double max_value_over_tau = 0;
  double headroom = 0;  // smallest security bound among the paths seen
  std::size_t degraded = 0;
  // Counts of V / tau in ten buckets of 10% each; the last one also takes V > tau.
  std::vector<std::size_t> histogram;

  nlohmann::json to_json() const;
  std::string table() const;
};

// Throws kNotFound when a path names a chain without a ledger.
DegradationReport degradation_report(const std::vector<ValuedCtx>& ctxs,
                                     const std::map<chain::ChainId, StakeLedger>& ledgers);

// Valued ctx of everything submitted to net, path = origin, RC, destination.
// Messages carry value 0.
std::vector<ValuedCtx> valued_ctxs(const relay::Network& net);
std::map<chain::ChainId, StakeLedger> ledgers_of(const relay::Network& net);

}  // namespace maprelay::economics
