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

#include "maprelay/economics/security.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "maprelay/common/error.hpp"
#include "maprelay/relay/network.hpp"

namespace maprelay::economics {

StakeLedger::StakeLedger(chain::ChainId chain, std::vector<std::uint64_t> stakes)
    : chain_(chain), stakes_(std::move(stakes)) {
  recompute();
}

StakeLedger StakeLedger::from_config(const chain::ChainConfig& cfg) {
  std::vector<std::uint64_t> s;
  for (const auto& v : cfg.validators) s.push_back(v.weight);
  return StakeLedger(cfg.chain_id, std::move(s));
}

void StakeLedger::set_stake(std::size_t validator, std::uint64_t stake) {
  MAPRELAY_ENFORCE(validator < stakes_.size(), ErrorCode::kInvalidArgument, "no such validator");
  stakes_[validator] = stake;
  recompute();
}

void StakeLedger::add_validator(std::uint64_t stake) {
  stakes_.push_back(stake);
  recompute();
}

void StakeLedger::recompute() {
  total_ = std::accumulate(stakes_.begin(), stakes_.end(), std::uint64_t{0});
}

namespace {

const StakeLedger& weakest(const std::vector<StakeLedger>& chains) {
  MAPRELAY_ENFORCE(!chains.empty(), ErrorCode::kInvalidArgument, "no chains");
  return *std::min_element(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    return a.tau_thirds() < b.tau_thirds();
  });
}

}  // namespace

std::uint64_t network_security_thirds(const std::vector<StakeLedger>& chains) {
  return weakest(chains).tau_thirds();
}

double network_security(const std::vector<StakeLedger>& chains) {
  return static_cast<double>(network_security_thirds(chains)) / 3.0;
}

TxSafety check_tx_safety(std::uint64_t value, const std::vector<StakeLedger>& path) {
  const StakeLedger& w = weakest(path);
  TxSafety s;
  s.weakest_chain = w.chain();
  s.margin_thirds = static_cast<std::int64_t>(w.tau_thirds()) - 3 * static_cast<std::int64_t>(value);
  s.safe = s.margin_thirds >= 0;
  return s;
}

DegradationReport degradation_report(const std::vector<ValuedCtx>& ctxs,
                                     const std::map<chain::ChainId, StakeLedger>& ledgers) {
  DegradationReport r;
  r.histogram.assign(10, 0);
  bool first = true;
  for (const auto& c : ctxs) {
    std::vector<StakeLedger> path;
    for (auto id : c.path) {
      auto it = ledgers.find(id);
      MAPRELAY_ENFORCE(it != ledgers.end(), ErrorCode::kNotFound,
                       "no stake ledger for chain " + std::to_string(id));
      path.push_back(it->second);
    }
    CtxVerdict v{c.key, c.value, check_tx_safety(c.value, path)};
    const StakeLedger& w = ledgers.at(v.safety.weakest_chain);
    const double tau = w.tau();
    if (!v.safety.safe) ++r.degraded;
    if (w.total() > 0) {
      r.max_value_over_stake = std::max(r.max_value_over_stake,
                                        static_cast<double>(c.value) / static_cast<double>(w.total()));
    }
    double q = tau > 0 ? c.value / tau : 1.0;
    r.max_value_over_tau = std::max(r.max_value_over_tau, q);
    r.histogram[std::min<std::size_t>(9, static_cast<std::size_t>(q * 10))]++;
    r.max_value = std::max(r.max_value, c.value);
    r.headroom = first ? tau : std::min(r.headroom, tau);
    first = false;
    r.verdicts.push_back(v);
  }
  return r;
}

nlohmann::json DegradationReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& c : verdicts) {
    v.push_back({{"key", c.key.str()},
                 {"value", c.value},
                 {"safe", c.safety.safe},
                 {"margin", c.safety.margin()},
                 {"weakest_chain", c.safety.weakest_chain}});
  }
  return {{"ctx_count", verdicts.size()},
          {"degraded", degraded},
          {"max_value", max_value},
          {"max_value_over_stake", max_value_over_stake},
          {"max_value_over_tau", max_value_over_tau},
          {"headroom", headroom},
          {"histogram", histogram},
          {"verdicts", v}};
}

std::string DegradationReport::table() const {
  std::ostringstream o;
  char buf[160];
  std::snprintf(buf, sizeof buf, "ctx %zu  degraded %zu  max value %llu\n", verdicts.size(),
                degraded, static_cast<unsigned long long>(max_value));
  o << buf;
  std::snprintf(buf, sizeof buf, "max V/S %.4f%%  max V/tau %.4f%%  headroom %.2f\n",
                100 * max_value_over_stake, 100 * max_value_over_tau, headroom);
  o << buf;
  o << "V/tau bucket   count\n";
  for (std::size_t i = 0; i < histogram.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%3zu%%-%3zu%%%s %7zu\n", i * 10, i * 10 + 10,
                  i == 9 ? "+" : " ", histogram[i]);
    o << buf;
  }
  return o.str();
}

std::vector<ValuedCtx> valued_ctxs(const relay::Network& net) {
  std::vector<ValuedCtx> out;
  for (const auto& [k, st] : net.submitted()) {
    ValuedCtx v;
    v.key = k;
    if (const auto* a = std::get_if<chain::AssetPayload>(&st.ctx.payload)) v.value = a->amount;
    v.path = {st.ctx.origin_chain, net.rc().id(), st.ctx.dest_chain};
    out.push_back(std::move(v));
  }
  return out;
}

std::map<chain::ChainId, StakeLedger> ledgers_of(const relay::Network& net) {
  std::map<chain::ChainId, StakeLedger> m;
  m[net.rc().id()] = StakeLedger::from_config(net.rc().chain().config());
  for (auto id : net.chain_ids()) m[id] = StakeLedger::from_config(net.chain(id).config());
  return m;
}

}  // namespace maprelay::economics
