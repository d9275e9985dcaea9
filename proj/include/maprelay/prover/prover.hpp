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
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "maprelay/chain/chain.hpp"
#include "maprelay/lc/light_client.hpp"
#include "maprelay/prover/zk.hpp"

namespace maprelay::prover {

// One confirmed receipt as seen by a prover.
struct ConfirmationEvent {
  chain::ChainId chain = 0;
  std::uint64_t height = 0;
  std::size_t index = 0;
  chain::ReceiptMessage receipt;
};

// Yields every receipt of every block exactly once, in block order.
class Monitor {
 public:
  explicit Monitor(const chain::Chain& c) : chain_(&c) {}

  std::vector<ConfirmationEvent> poll();
  // First height not yet polled.
  std::uint64_t next_height() const { return next_; }

 private:
  const chain::Chain* chain_;
  std::uint64_t next_ = 1;  // genesis carries no receipts
};

lc::LcParams params_of(const chain::ChainConfig& cfg);

// Statement for bh under the chain's own record of the signing set.
ZkStatement header_statement(const chain::Chain& c, const chain::BlockHeader& bh);

// Throws kProveRefused when bh's quorum is invalid (bad signature, weight below T).
ZkProof prove_header(const chain::Chain& c, const chain::BlockHeader& bh,
                     Backend backend = Backend::kTransparent,
                     CircuitMode mode = CircuitMode::kSplit, const GateCostTable& table = {});

struct ProofBundle {
  chain::ReceiptMessage receipt;
  chain::BlockHeader header;
  crypto::MerkleProof mkl;
  ZkProof zk;
};

// Throws kNotFound when tx_hash is not in bh's block, kInvalidArgument when
// r_mkl is not that block's root, and kProveRefused from the zk step.
ProofBundle gen_proofs(const chain::Chain& c, const chain::BlockHeader& bh, const Digest& r_mkl,
                       const Digest& tx_hash, Backend backend = Backend::kTransparent);

// A message in flight to a light client hosted on target.
struct RelayMessage {
  enum class Kind : std::uint8_t { kUpdate = 1, kReceipt = 2 };
  Kind kind = Kind::kReceipt;
  chain::ChainId origin = 0;  // chain the header belongs to
  chain::ChainId target = 0;
  std::uint64_t prover = 0;
  chain::BlockHeader header;
  ZkProof zk;
  std::optional<chain::ReceiptMessage> receipt;  // receipts only
  std::optional<crypto::MerkleProof> mkl;        // receipts only
};

struct DeliveryReceipt {
  std::uint64_t sequence = 0;
  chain::ChainId target = 0;
  std::uint64_t ready_at = 0;
};

// Per-target inboxes. Messages become visible at their ready time and are
// handed out in (ready time, sequence) order.
class MessageBus {
 public:
  void register_target(chain::ChainId id);
  bool has_target(chain::ChainId id) const { return inboxes_.count(id) != 0; }
  // Throws kUnknownTarget.
  DeliveryReceipt transmit(RelayMessage msg, std::uint64_t ready_at);
  std::vector<RelayMessage> take_ready(chain::ChainId target, std::uint64_t now);
  std::size_t in_flight() const;

 private:
  struct Entry {
    std::uint64_t ready_at;
    std::uint64_t seq;
    RelayMessage msg;
  };
  std::map<chain::ChainId, std::deque<Entry>> inboxes_;
  std::uint64_t seq_ = 0;
};

}  // namespace maprelay::prover
