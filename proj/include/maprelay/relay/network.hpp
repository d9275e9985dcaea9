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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "maprelay/prover/prover.hpp"
#include "maprelay/relay/relay_chain.hpp"

namespace maprelay::relay {

enum class ProverFault { kHonest, kSilent, kTampering };
std::string_view to_string(ProverFault f);
ProverFault parse_prover_fault(std::string_view s);

struct ProverSpec {
  std::uint64_t id = 0;
  ProverFault fault = ProverFault::kHonest;
  prover::Backend backend = prover::Backend::kTransparent;
};

// Pipeline stages. The seven of a complete relay, in order, are commit_sc,
// confirm_sc, prove_sc, confirm_rc, prove_rc, verify_dc, confirm_dc. The
// others record individual deliveries and light-client updates.
enum class Stage : std::uint8_t {
  kCommitSc,
  kConfirmSc,
  kProveSc,
  kVerifyRc,
  kConfirmRc,
  kProveRc,
  kVerifyDc,
  kConfirmDc,
  kUpdateRc,
  kUpdateDc,
};
std::string_view to_string(Stage s);
inline constexpr Stage kPipeline[7] = {Stage::kCommitSc,  Stage::kConfirmSc, Stage::kProveSc,
                                       Stage::kConfirmRc, Stage::kProveRc,   Stage::kVerifyDc,
                                       Stage::kConfirmDc};

struct TraceEvent {
  std::uint64_t seq = 0;
  chain::CtxKey key;  // for updates: {tracked chain, new epoch}
  Stage stage = Stage::kCommitSc;
  std::uint64_t time = 0;  // 4 * tick + phase
  chain::ChainId chain = 0;  // chain where the event happened
  std::uint64_t prover = 0;
  std::uint64_t gas = 0;
  std::string verdict;  // "ok", "duplicate" or a rejection reason

  nlohmann::json to_json() const;
};

struct NetworkOptions {
  lc::GasCostTable gas;
  // Ticks after submission by which a ctx must be confirmed on its
  // destination. 10 x the seven pipeline stages.
  std::uint64_t horizon_ticks = 70;
};

// Deterministic scheduler over the source/destination chains, the relay
// chain, the message bus and the provers. Each tick runs, in order:
// deliver (phase 0), produce blocks (1), provers poll/prove/transmit (2).
// Submissions made between ticks are stamped with phase 3 of the last tick.
class Network {
 public:
  explicit Network(chain::ChainConfig rc_config, NetworkOptions opts = {});
  ~Network();
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  // Adds a chain, registering its LC on RC (as_source) and an RC LC on it
  // (as_dest).
  void add_chain(chain::ChainConfig cfg, bool as_source = true, bool as_dest = true);
  void register_source(chain::ChainId id);
  void register_dest(chain::ChainId id);
  void add_prover(ProverSpec spec);

  chain::Chain& chain(chain::ChainId id);
  const chain::Chain& chain(chain::ChainId id) const;
  std::vector<chain::ChainId> chain_ids() const;  // excludes RC
  RelayChain& rc() { return rc_; }
  const RelayChain& rc() const { return rc_; }
  RcClient& rc_client(chain::ChainId id);
  bool is_dest(chain::ChainId id) const { return clients_.count(id) != 0; }
  prover::MessageBus& bus() { return bus_; }
  const NetworkOptions& options() const { return opts_; }

  // Submits ctx on its origin chain. Throws kUnknownTarget when the
  // destination is not connected and kNotFound for an unknown origin.
  chain::CtxKey submit(const chain::CrossChainTx& ctx);
  std::uint64_t next_nonce(chain::ChainId origin) const;

  void tick();
  std::uint64_t now_tick() const { return tick_; }
  // Ticks until every submitted ctx is confirmed on its destination or
  // max_ticks pass. Returns true when everything settled.
  bool run_until_settled(std::uint64_t max_ticks);

  // Submits ctx, runs to confirmation or horizon and returns the ctx's
  // pipeline events.
  std::vector<TraceEvent> end_to_end_relay(const chain::CrossChainTx& ctx);

  const std::vector<TraceEvent>& trace() const { return trace_; }
  std::vector<TraceEvent> events_of(const chain::CtxKey& k) const;
  std::string trace_jsonl() const;
  // Gas receipts of every light-client call, tagged with the trace seq.
  const std::vector<std::pair<std::uint64_t, lc::GasReceipt>>& gas_log() const { return gas_log_; }
  std::string gas_jsonl() const;
  void on_event(std::function<void(const TraceEvent&)> f) { listeners_.push_back(std::move(f)); }

  struct CtxStatus {
    chain::CrossChainTx ctx;
    std::uint64_t submitted_tick = 0;
    bool confirmed_sc = false;
    bool confirmed_rc = false;
    bool confirmed_dc = false;
  };
  const std::map<chain::CtxKey, CtxStatus>& submitted() const { return ctxs_; }
  // Submitted ctx not confirmed on DC within the horizon as of now.
  std::vector<chain::CtxKey> stalled() const;
  // Final confirmations on any destination whose key was never submitted or
  // whose payload differs from the submitted one.
  std::vector<chain::CtxKey> unbacked_confirmations() const;

 private:
  struct Agent;
  void emit(TraceEvent e);
  void emit(TraceEvent e, lc::GasReceipt gas);
  std::uint64_t time(std::uint64_t phase) const { return 4 * tick_ + phase; }
  void deliver();
  void produce();
  void prove();
  void run_agent(Agent& a);
  const prover::ZkProof& header_proof(const chain::Chain& c, std::uint64_t height,
                                      prover::Backend b);
  const std::vector<crypto::MerkleProof>& block_proofs(const chain::Chain& c, std::uint64_t height);
  const chain::Chain& chain_or_rc(chain::ChainId id) const;

  NetworkOptions opts_;
  RelayChain rc_;
  std::map<chain::ChainId, std::unique_ptr<chain::Chain>> chains_;
  std::map<chain::ChainId, RcClient> clients_;
  prover::MessageBus bus_;
  std::vector<std::unique_ptr<Agent>> agents_;
  std::uint64_t tick_ = 0;
  std::uint64_t seq_ = 0;
  std::vector<TraceEvent> trace_;
  std::vector<std::pair<std::uint64_t, lc::GasReceipt>> gas_log_;
  std::vector<std::function<void(const TraceEvent&)>> listeners_;
  std::map<chain::CtxKey, CtxStatus> ctxs_;
  std::map<Digest, chain::CtxKey> sc_hashes_;
  std::map<Digest, chain::CtxKey> final_hashes_;
  std::map<chain::ChainId, std::uint64_t> nonces_;
  // Memoized proofs. Proving is deterministic, so sharing these across
  // provers changes nothing but run time.
  std::map<std::tuple<chain::ChainId, std::uint64_t, prover::Backend>, prover::ZkProof> zk_cache_;
  std::map<std::pair<chain::ChainId, std::uint64_t>, std::vector<crypto::MerkleProof>> mkl_cache_;
};

}  // namespace maprelay::relay
