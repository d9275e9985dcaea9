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

#include "maprelay/prover/prover.hpp"

#include <algorithm>
#include <tuple>

#include "maprelay/common/error.hpp"

namespace maprelay::prover {

std::vector<ConfirmationEvent> Monitor::poll() {
  std::vector<ConfirmationEvent> out;
  for (; next_ <= chain_->height(); ++next_) {
    const chain::Block& b = chain_->block(next_);
    for (std::size_t i = 0; i < b.receipts.size(); ++i) {
      out.push_back({chain_->id(), next_, i, b.receipts[i]});
    }
  }
  return out;
}

lc::LcParams params_of(const chain::ChainConfig& cfg) {
  return {cfg.chain_id, cfg.epoch_size, cfg.threshold, cfg.hash};
}

ZkStatement header_statement(const chain::Chain& c, const chain::BlockHeader& bh) {
  const crypto::ValidatorSet& vs = c.validator_set(bh.signing_epoch());
  crypto::ValidatorSetCommitment commitment = crypto::commit_validator_set(vs, c.config().hash);
  std::uint64_t weight = bh.signature.bitmap.size() == vs.size() ? vs.weight_of(bh.signature.bitmap)
                                                                 : 0;
  ZkStatement s;
  s.inputs = lc::statement_inputs(params_of(c.config()), commitment, bh, weight);
  s.witness = {vs, bh.signature.bitmap, bh.signature.point};
  return s;
}

ZkProof prove_header(const chain::Chain& c, const chain::BlockHeader& bh, Backend backend,
                     CircuitMode mode, const GateCostTable& table) {
  return prove(header_statement(c, bh), backend, mode, table);
}

ProofBundle gen_proofs(const chain::Chain& c, const chain::BlockHeader& bh, const Digest& r_mkl,
                       const Digest& tx_hash, Backend backend) {
  const chain::Block& b = c.block(bh.height);
  MAPRELAY_ENFORCE(r_mkl == bh.receipt_root && b.header.receipt_root == r_mkl,
                   ErrorCode::kInvalidArgument, "receipt root does not match the block");
  auto it = std::find(b.tx_hashes.begin(), b.tx_hashes.end(), tx_hash);
  MAPRELAY_ENFORCE(it != b.tx_hashes.end(), ErrorCode::kNotFound, "ctx is not in this block");
  std::size_t idx = static_cast<std::size_t>(it - b.tx_hashes.begin());
  std::vector<Bytes> leaves;
  leaves.reserve(b.receipts.size());
  for (const auto& r : b.receipts) leaves.push_back(r.serialize());
  ProofBundle out;
  out.receipt = b.receipts[idx];
  out.header = bh;
  out.mkl = crypto::merkle_prove(leaves, idx, c.config().hash);
  out.zk = prove_header(c, bh, backend);
  return out;
}

void MessageBus::register_target(chain::ChainId id) {
  MAPRELAY_ENFORCE(!inboxes_.count(id), ErrorCode::kDuplicate, "target already registered");
  inboxes_[id];
}

DeliveryReceipt MessageBus::transmit(RelayMessage msg, std::uint64_t ready_at) {
  auto it = inboxes_.find(msg.target);
  MAPRELAY_ENFORCE(it != inboxes_.end(), ErrorCode::kUnknownTarget,
                   "unknown target chain " + std::to_string(msg.target));
  DeliveryReceipt r{seq_++, msg.target, ready_at};
  Entry e{ready_at, r.sequence, std::move(msg)};
  auto& q = it->second;
  auto pos = std::upper_bound(q.begin(), q.end(), e, [](const Entry& a, const Entry& b) {
    return std::tie(a.ready_at, a.seq) < std::tie(b.ready_at, b.seq);
  });
  q.insert(pos, std::move(e));
  return r;
}

std::vector<RelayMessage> MessageBus::take_ready(chain::ChainId target, std::uint64_t now) {
  auto it = inboxes_.find(target);
  MAPRELAY_ENFORCE(it != inboxes_.end(), ErrorCode::kUnknownTarget,
                   "unknown target chain " + std::to_string(target));
  std::vector<RelayMessage> out;
  auto& q = it->second;
  while (!q.empty() && q.front().ready_at <= now) {
    out.push_back(std::move(q.front().msg));
    q.pop_front();
  }
  return out;
}

std::size_t MessageBus::in_flight() const {
  std::size_t n = 0;
  for (const auto& [id, q] : inboxes_) n += q.size();
  return n;
}

}  // namespace maprelay::prover
