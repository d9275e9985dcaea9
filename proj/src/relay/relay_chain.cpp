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

#include "maprelay/relay/relay_chain.hpp"

#include "maprelay/common/error.hpp"
#include "maprelay/prover/prover.hpp"

namespace maprelay::relay {

std::string event_tag(ByteView event) {
  try {
    Reader r(event);
    return r.str();
  } catch (const Error&) {
    return {};
  }
}

Bytes IntermediateCtx::serialize() const {
  Writer w;
  w.str(kIctxTag);
  w.var_bytes(ctx.serialize());
  w.u64(source_height);
  w.digest(source_tx_hash);
  return std::move(w).take();
}

IntermediateCtx IntermediateCtx::deserialize(ByteView data) {
  Reader r(data);
  MAPRELAY_ENFORCE(r.str() == kIctxTag, ErrorCode::kDecode, "not an intermediate ctx");
  IntermediateCtx x;
  x.ctx = chain::CrossChainTx::deserialize(r.var_bytes());
  x.source_height = r.u64();
  x.source_tx_hash = r.digest();
  r.finish();
  return x;
}

Digest ictx_key(const chain::CtxKey& k, HashAlgo algo) {
  Writer w;
  w.str("maprelay/ictx-key/v1").u64(k.origin_chain).u64(k.nonce);
  return hash(w.bytes(), algo);
}

Bytes FinalConfirmation::serialize() const {
  Writer w;
  w.str(kFinalTag);
  w.u64(key.origin_chain).u64(key.nonce).u64(dest_chain).u64(rc_height);
  w.var_bytes(payload);
  return std::move(w).take();
}

FinalConfirmation FinalConfirmation::deserialize(ByteView data) {
  Reader r(data);
  MAPRELAY_ENFORCE(r.str() == kFinalTag, ErrorCode::kDecode, "not a final confirmation");
  FinalConfirmation f;
  f.key.origin_chain = r.u64();
  f.key.nonce = r.u64();
  f.dest_chain = r.u64();
  f.rc_height = r.u64();
  f.payload = r.var_bytes();
  r.finish();
  return f;
}

namespace {

chain::ChainConfig committed(chain::ChainConfig cfg) {
  cfg.mode = chain::HeaderMode::kCommitted;
  return cfg;
}

}  // namespace

RelayChain::RelayChain(chain::ChainConfig cfg, lc::GasCostTable gas)
    : chain_(committed(std::move(cfg))), gas_(gas) {}

lc::GasReceipt RelayChain::register_source(const chain::ChainConfig& source,
                                           const crypto::ValidatorSet& genesis) {
  MAPRELAY_ENFORCE(source.chain_id != id(), ErrorCode::kDuplicate,
                   "relay chain cannot track itself");
  MAPRELAY_ENFORCE(!lcs_.count(source.chain_id), ErrorCode::kDuplicate,
                   "source chain " + std::to_string(source.chain_id) + " already registered");
  auto setup = lc::hlc_setup(prover::params_of(source), genesis, gas_);
  lcs_.emplace(source.chain_id, setup.state);
  return setup.gas;
}

const lc::HybridLcState& RelayChain::lc(chain::ChainId source) const {
  auto it = lcs_.find(source);
  MAPRELAY_ENFORCE(it != lcs_.end(), ErrorCode::kNotFound,
                   "no light client for chain " + std::to_string(source));
  return it->second;
}

lc::UpdateOutcome<lc::HybridLcState> RelayChain::apply_update(const chain::BlockHeader& bh,
                                                              const prover::ZkProof& zk) {
  const lc::HybridLcState& cur = lc(bh.chain_id);
  auto out = lc::hlc_update(cur, bh, zk, gas_);
  if (out.ok()) lcs_[bh.chain_id] = out.state;
  return out;
}

Received RelayChain::relay_receive(const chain::CrossChainTx& ctx, const chain::BlockHeader& bh,
                                   const crypto::MerkleProof& mkl, const prover::ZkProof& zk) {
  const lc::HybridLcState& state = lc(ctx.origin_chain);
  chain::ReceiptMessage m{ctx.hash(state.params.hash), ctx.serialize(), bh.height};
  auto v = lc::hlc_verify(state, m, bh, mkl, zk, gas_);
  Received out{v.rejection, false, std::move(v.gas)};
  if (!v.accepted) return out;
  chain::CtxKey k = chain::key_of(ctx);
  if (ledger_.count(k)) {
    out.duplicate = true;
    return out;
  }
  IntermediateCtx x;
  x.ctx = ctx;
  x.source_height = bh.height;
  x.source_tx_hash = m.tx_hash;
  Digest rk = ictx_key(k, chain_.config().hash);
  chain_.submit_event(rk, x.serialize());
  by_rc_key_.emplace(rk, k);
  ledger_.emplace(k, std::move(x));
  return out;
}

std::vector<IntermediateCtx> RelayChain::on_block(const chain::Block& b) {
  std::vector<IntermediateCtx> out;
  for (std::size_t i = 0; i < b.tx_hashes.size(); ++i) {
    auto it = by_rc_key_.find(b.tx_hashes[i]);
    if (it == by_rc_key_.end()) continue;
    IntermediateCtx& x = ledger_.at(it->second);
    x.rc_height = b.header.height;
    x.rc_receipt = b.receipts[i];
    out.push_back(x);
  }
  return out;
}

const IntermediateCtx* RelayChain::find(const chain::CtxKey& k) const {
  auto it = ledger_.find(k);
  return it == ledger_.end() ? nullptr : &it->second;
}

bool RelayChain::is_confirmed(const chain::CtxKey& k) const {
  const IntermediateCtx* x = find(k);
  return x && x->rc_receipt.has_value();
}

RcClient::RcClient(chain::ChainId host, const RelayChain& rc)
    : host_(host),
      gas_(rc.gas_table()),
      lc_(lc::hlc_setup(prover::params_of(rc.chain().config()), rc.chain().validator_set(0),
                        rc.gas_table())
              .state) {}

lc::UpdateOutcome<lc::HybridLcState> RcClient::apply_update(const chain::BlockHeader& bh,
                                                            const prover::ZkProof& zk) {
  auto out = lc::hlc_update(lc_, bh, zk, gas_);
  if (out.ok()) lc_ = out.state;
  return out;
}

Received RcClient::dest_receive(const IntermediateCtx& ictx, const chain::BlockHeader& bh_rc,
                                const crypto::MerkleProof& mkl, const prover::ZkProof& zk) {
  chain::CtxKey k = ictx.key();
  chain::ReceiptMessage m{ictx_key(k, lc_.params.hash), ictx.serialize(), bh_rc.height};
  auto v = lc::hlc_verify(lc_, m, bh_rc, mkl, zk, gas_);
  Received out{v.rejection, false, std::move(v.gas)};
  if (!v.accepted) return out;
  if (ictx.ctx.dest_chain != host_) {
    out.rejection = lc::Rejection::kWrongChain;
    return out;
  }
  if (confirmed_.count(k)) {
    out.duplicate = true;
    return out;
  }
  confirmed_.emplace(k, FinalConfirmation{k, host_, bh_rc.height, ictx.ctx.payload_bytes()});
  return out;
}

std::string_view to_string(Topology t) { return t == Topology::kPairwise ? "pairwise" : "relayed"; }

DeploymentPlan deployment_plan(std::uint64_t chains, Topology topology,
                               std::uint64_t validators_per_chain, const lc::GasCostTable& table) {
  MAPRELAY_ENFORCE(chains >= 2, ErrorCode::kInvalidArgument, "deployment needs at least 2 chains");
  DeploymentPlan p;
  p.chains = chains;
  p.topology = topology;
  if (topology == Topology::kPairwise) {
    p.lc_instances = chains * (chains - 1);
    p.deployment_gas = p.lc_instances * validators_per_chain * table.validator_entry_words *
                       table.storage_write_word;
  } else {
    p.lc_instances = 2 * chains;
    p.deployment_gas = p.lc_instances * table.commitment_record_words * table.storage_write_word;
  }
  return p;
}

}  // namespace maprelay::relay
