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
#include <optional>
#include <vector>

#include "maprelay/chain/chain.hpp"
#include "maprelay/lc/light_client.hpp"
#include "maprelay/prover/zk.hpp"

namespace maprelay::relay {

// Tag of a receipt event body, or empty when the body is not tagged.
std::string event_tag(ByteView event);
inline constexpr std::string_view kCtxTag = "maprelay/ctx/v1";
inline constexpr std::string_view kIctxTag = "maprelay/ictx/v1";
inline constexpr std::string_view kFinalTag = "maprelay/final/v1";

// The RC's record of a ctx it verified (the intermediate ctx).
struct IntermediateCtx {
  chain::CrossChainTx ctx;
  std::uint64_t source_height = 0;
  Digest source_tx_hash;
  // Set once the record is included on RC.
  std::uint64_t rc_height = 0;
  std::optional<chain::ReceiptMessage> rc_receipt;

  chain::ChainId origin_chain() const { return ctx.origin_chain; }
  chain::CtxKey key() const { return chain::key_of(ctx); }
  // RC event body. Excludes the rc_* fields.
  Bytes serialize() const;
  static IntermediateCtx deserialize(ByteView data);
};

// Key under which RC and destinations index a ctx.
Digest ictx_key(const chain::CtxKey& k, HashAlgo algo = HashAlgo::kSha256);

struct Received {
  lc::Rejection rejection = lc::Rejection::kNone;
  bool duplicate = false;
  lc::GasReceipt gas;
  bool ok() const { return rejection == lc::Rejection::kNone; }
};

// The unified relay chain: its own PoS chain plus one hybrid light client
// per registered source.
class RelayChain {
 public:
  explicit RelayChain(chain::ChainConfig cfg, lc::GasCostTable gas = {});

  chain::Chain& chain() { return chain_; }
  const chain::Chain& chain() const { return chain_; }
  chain::ChainId id() const { return chain_.id(); }
  const lc::GasCostTable& gas_table() const { return gas_; }

  // Throws kDuplicate for an already registered id or RC's own id.
  lc::GasReceipt register_source(const chain::ChainConfig& source,
                                 const crypto::ValidatorSet& genesis);
  bool has_source(chain::ChainId id) const { return lcs_.count(id) != 0; }
  // Throws kNotFound.
  const lc::HybridLcState& lc(chain::ChainId source) const;
  std::size_t lc_count() const { return lcs_.size(); }

  // Epoch update of the source LC named by bh.chain_id. Throws kNotFound.
  lc::UpdateOutcome<lc::HybridLcState> apply_update(const chain::BlockHeader& bh,
                                                    const prover::ZkProof& zk);

  // Verifies ctx against its origin's LC and queues the intermediate record
  // for the next RC block. Throws kNotFound for an unregistered origin.
  Received relay_receive(const chain::CrossChainTx& ctx, const chain::BlockHeader& bh,
                         const crypto::MerkleProof& mkl, const prover::ZkProof& zk);

  // Marks records included in b as confirmed and returns them.
  std::vector<IntermediateCtx> on_block(const chain::Block& b);

  const IntermediateCtx* find(const chain::CtxKey& k) const;
  bool is_confirmed(const chain::CtxKey& k) const;
  const std::map<chain::CtxKey, IntermediateCtx>& ledger() const { return ledger_; }

 private:
  chain::Chain chain_;
  lc::GasCostTable gas_;
  std::map<chain::ChainId, lc::HybridLcState> lcs_;
  std::map<chain::CtxKey, IntermediateCtx> ledger_;
  std::map<Digest, chain::CtxKey> by_rc_key_;
};

struct FinalConfirmation {
  chain::CtxKey key;
  chain::ChainId dest_chain = 0;
  std::uint64_t rc_height = 0;
  Bytes payload;  // ctx payload bytes as confirmed

  Bytes serialize() const;
  static FinalConfirmation deserialize(ByteView data);
};

// The RC light client hosted on a destination chain.
class RcClient {
 public:
  RcClient(chain::ChainId host, const RelayChain& rc);

  chain::ChainId host() const { return host_; }
  const lc::HybridLcState& lc() const { return lc_; }
  lc::UpdateOutcome<lc::HybridLcState> apply_update(const chain::BlockHeader& bh,
                                                    const prover::ZkProof& zk);

  // Final verification of an intermediate record against an RC header.
  Received dest_receive(const IntermediateCtx& ictx, const chain::BlockHeader& bh_rc,
                        const crypto::MerkleProof& mkl, const prover::ZkProof& zk);

  bool is_confirmed(const chain::CtxKey& k) const { return confirmed_.count(k) != 0; }
  const std::map<chain::CtxKey, FinalConfirmation>& confirmed() const { return confirmed_; }

 private:
  chain::ChainId host_;
  lc::GasCostTable gas_;
  lc::HybridLcState lc_;
  std::map<chain::CtxKey, FinalConfirmation> confirmed_;
};

enum class Topology { kPairwise, kRelayed };
std::string_view to_string(Topology t);

struct DeploymentPlan {
  std::uint64_t chains = 0;
  Topology topology = Topology::kRelayed;
  std::uint64_t lc_instances = 0;
  std::uint64_t deployment_gas = 0;
};

// Pairwise: one normal LC per ordered chain pair, each storing a full set of
// validators_per_chain entries. Relayed: N source LCs on RC plus one RC LC
// per chain, each storing one commitment. Throws for chains < 2.
DeploymentPlan deployment_plan(std::uint64_t chains, Topology topology,
                               std::uint64_t validators_per_chain = 100,
                               const lc::GasCostTable& table = {});

}  // namespace maprelay::relay
