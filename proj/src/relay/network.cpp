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

#include "maprelay/relay/network.hpp"

#include <algorithm>
#include <sstream>

#include "maprelay/common/error.hpp"

namespace maprelay::relay {

std::string_view to_string(ProverFault f) {
  switch (f) {
    case ProverFault::kHonest: return "honest";
    case ProverFault::kSilent: return "silent";
    case ProverFault::kTampering: return "tampering";
  }
  return "?";
}

ProverFault parse_prover_fault(std::string_view s) {
  for (auto f : {ProverFault::kHonest, ProverFault::kSilent, ProverFault::kTampering}) {
    if (to_string(f) == s) return f;
  }
  throw Error(ErrorCode::kConfig, "unknown prover fault profile: " + std::string(s));
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kCommitSc: return "commit_sc";
    case Stage::kConfirmSc: return "confirm_sc";
    case Stage::kProveSc: return "prove_sc";
    case Stage::kVerifyRc: return "verify_rc";
    case Stage::kConfirmRc: return "confirm_rc";
    case Stage::kProveRc: return "prove_rc";
    case Stage::kVerifyDc: return "verify_dc";
    case Stage::kConfirmDc: return "confirm_dc";
    case Stage::kUpdateRc: return "update_rc";
    case Stage::kUpdateDc: return "update_dc";
  }
  return "?";
}

nlohmann::json TraceEvent::to_json() const {
  return {{"seq", seq},          {"ctx", key.str()},  {"stage", std::string(to_string(stage))},
          {"time", time},        {"chain", chain},    {"prover", prover},
          {"gas", gas},          {"verdict", verdict}};
}

struct Network::Agent {
  ProverSpec spec;
  std::map<chain::ChainId, prover::Monitor> monitors;
  std::map<std::pair<chain::ChainId, chain::ChainId>, std::uint64_t> sent_epoch;  // (target, origin)
};

Network::Network(chain::ChainConfig rc_config, NetworkOptions opts)
    : opts_(opts), rc_(std::move(rc_config), opts.gas) {
  bus_.register_target(rc_.id());
}

Network::~Network() = default;

void Network::add_chain(chain::ChainConfig cfg, bool as_source, bool as_dest) {
  chain::ChainId id = cfg.chain_id;
  MAPRELAY_ENFORCE(id != rc_.id() && !chains_.count(id), ErrorCode::kDuplicate,
                   "chain id " + std::to_string(id) + " already in use");
  chains_.emplace(id, std::make_unique<chain::Chain>(std::move(cfg)));
  if (as_source) register_source(id);
  if (as_dest) register_dest(id);
}

void Network::register_source(chain::ChainId id) {
  const chain::Chain& c = chain(id);
  rc_.register_source(c.config(), c.validator_set(0));
}

void Network::register_dest(chain::ChainId id) {
  chain(id);
  MAPRELAY_ENFORCE(!clients_.count(id), ErrorCode::kDuplicate, "destination already registered");
  clients_.emplace(id, RcClient(id, rc_));
  bus_.register_target(id);
}

void Network::add_prover(ProverSpec spec) {
  for (const auto& a : agents_) {
    MAPRELAY_ENFORCE(a->spec.id != spec.id, ErrorCode::kDuplicate, "prover id already in use");
  }
  auto a = std::make_unique<Agent>();
  a->spec = spec;
  agents_.push_back(std::move(a));
  std::sort(agents_.begin(), agents_.end(),
            [](const auto& x, const auto& y) { return x->spec.id < y->spec.id; });
}

chain::Chain& Network::chain(chain::ChainId id) {
  auto it = chains_.find(id);
  MAPRELAY_ENFORCE(it != chains_.end(), ErrorCode::kNotFound,
                   "unknown chain " + std::to_string(id));
  return *it->second;
}

const chain::Chain& Network::chain(chain::ChainId id) const {
  auto it = chains_.find(id);
  MAPRELAY_ENFORCE(it != chains_.end(), ErrorCode::kNotFound,
                   "unknown chain " + std::to_string(id));
  return *it->second;
}

const chain::Chain& Network::chain_or_rc(chain::ChainId id) const {
  return id == rc_.id() ? rc_.chain() : chain(id);
}

std::vector<chain::ChainId> Network::chain_ids() const {
  std::vector<chain::ChainId> out;
  for (const auto& [id, c] : chains_) out.push_back(id);
  return out;
}

RcClient& Network::rc_client(chain::ChainId id) {
  auto it = clients_.find(id);
  MAPRELAY_ENFORCE(it != clients_.end(), ErrorCode::kUnknownTarget,
                   "chain " + std::to_string(id) + " hosts no relay-chain client");
  return it->second;
}

std::uint64_t Network::next_nonce(chain::ChainId origin) const {
  auto it = nonces_.find(origin);
  return it == nonces_.end() ? 0 : it->second;
}

chain::CtxKey Network::submit(const chain::CrossChainTx& ctx) {
  chain::Chain& origin = chain(ctx.origin_chain);
  MAPRELAY_ENFORCE(is_dest(ctx.dest_chain), ErrorCode::kUnknownTarget,
                   "destination " + std::to_string(ctx.dest_chain) + " is not connected");
  MAPRELAY_ENFORCE(rc_.has_source(ctx.origin_chain), ErrorCode::kUnknownTarget,
                   "origin " + std::to_string(ctx.origin_chain) + " is not registered on RC");
  chain::CtxKey k = chain::key_of(ctx);
  MAPRELAY_ENFORCE(!ctxs_.count(k), ErrorCode::kDuplicate, "ctx key " + k.str() + " reused");
  Digest h = origin.submit_tx(ctx);
  sc_hashes_.emplace(h, k);
  ctxs_.emplace(k, CtxStatus{ctx, tick_, false, false, false});
  nonces_[ctx.origin_chain] = std::max(next_nonce(ctx.origin_chain), ctx.nonce + 1);
  emit({0, k, Stage::kCommitSc, time(3), ctx.origin_chain, 0, 0, "ok"});
  return k;
}

void Network::emit(TraceEvent e) {
  e.seq = seq_++;
  trace_.push_back(e);
  for (const auto& f : listeners_) f(trace_.back());
}

void Network::emit(TraceEvent e, lc::GasReceipt gas) {
  e.gas = gas.total;
  gas_log_.emplace_back(seq_, std::move(gas));
  emit(std::move(e));
}

std::string Network::gas_jsonl() const {
  std::ostringstream os;
  for (const auto& [seq, r] : gas_log_) {
    auto j = r.to_json();
    j["seq"] = seq;
    os << j.dump() << '\n';
  }
  return os.str();
}

void Network::tick() {
  ++tick_;
  deliver();
  produce();
  prove();
}

bool Network::run_until_settled(std::uint64_t max_ticks) {
  auto settled = [&] {
    return std::all_of(ctxs_.begin(), ctxs_.end(),
                       [](const auto& kv) { return kv.second.confirmed_dc; });
  };
  for (std::uint64_t i = 0; i < max_ticks && !settled(); ++i) tick();
  return settled();
}

std::vector<TraceEvent> Network::end_to_end_relay(const chain::CrossChainTx& ctx) {
  chain::CtxKey k = submit(ctx);
  for (std::uint64_t i = 0; i < opts_.horizon_ticks && !ctxs_.at(k).confirmed_dc; ++i) tick();
  return events_of(k);
}

std::vector<TraceEvent> Network::events_of(const chain::CtxKey& k) const {
  std::vector<TraceEvent> out;
  for (const auto& e : trace_) {
    if (e.key == k && e.stage != Stage::kUpdateRc && e.stage != Stage::kUpdateDc) out.push_back(e);
  }
  return out;
}

std::string Network::trace_jsonl() const {
  std::ostringstream os;
  for (const auto& e : trace_) os << e.to_json().dump() << '\n';
  return os.str();
}

std::vector<chain::CtxKey> Network::stalled() const {
  std::vector<chain::CtxKey> out;
  for (const auto& [k, s] : ctxs_) {
    if (!s.confirmed_dc && tick_ - s.submitted_tick >= opts_.horizon_ticks) out.push_back(k);
  }
  return out;
}

std::vector<chain::CtxKey> Network::unbacked_confirmations() const {
  std::vector<chain::CtxKey> out;
  for (const auto& [host, client] : clients_) {
    for (const auto& [k, fin] : client.confirmed()) {
      auto it = ctxs_.find(k);
      if (it == ctxs_.end() || it->second.ctx.payload_bytes() != fin.payload ||
          it->second.ctx.dest_chain != host) {
        out.push_back(k);
      }
    }
  }
  return out;
}

void Network::deliver() {
  const std::uint64_t t = time(0);
  for (auto& m : bus_.take_ready(rc_.id(), tick_)) {
    if (m.kind == prover::RelayMessage::Kind::kUpdate) {
      if (!rc_.has_source(m.header.chain_id)) continue;
      auto u = rc_.apply_update(m.header, m.zk);
      emit({0, {m.header.chain_id, m.header.epoch}, Stage::kUpdateRc, t, rc_.id(), m.prover, 0,
            std::string(u.ok() ? "ok" : lc::to_string(u.rejection))},
           std::move(u.gas));
      continue;
    }
    if (!m.receipt || !m.mkl) continue;
    chain::CrossChainTx ctx;
    try {
      ctx = chain::CrossChainTx::deserialize(m.receipt->event);
    } catch (const Error&) {
      continue;
    }
    if (!rc_.has_source(ctx.origin_chain)) continue;
    Received r = rc_.relay_receive(ctx, m.header, *m.mkl, m.zk);
    std::string verdict = r.ok() ? (r.duplicate ? "duplicate" : "ok")
                                 : std::string(lc::to_string(r.rejection));
    emit({0, chain::key_of(ctx), Stage::kVerifyRc, t, rc_.id(), m.prover, 0, verdict},
         std::move(r.gas));
  }
  for (auto& [host, client] : clients_) {
    for (auto& m : bus_.take_ready(host, tick_)) {
      if (m.kind == prover::RelayMessage::Kind::kUpdate) {
        auto u = client.apply_update(m.header, m.zk);
        emit({0, {m.header.chain_id, m.header.epoch}, Stage::kUpdateDc, t, host, m.prover, 0,
              std::string(u.ok() ? "ok" : lc::to_string(u.rejection))},
             std::move(u.gas));
        continue;
      }
      if (!m.receipt || !m.mkl) continue;
      IntermediateCtx x;
      try {
        x = IntermediateCtx::deserialize(m.receipt->event);
      } catch (const Error&) {
        continue;
      }
      Received r = client.dest_receive(x, m.header, *m.mkl, m.zk);
      std::string verdict = r.ok() ? (r.duplicate ? "duplicate" : "ok")
                                   : std::string(lc::to_string(r.rejection));
      if (r.ok() && !r.duplicate) {
        const FinalConfirmation& fin = client.confirmed().at(x.key());
        Writer w;
        w.str("maprelay/final-key/v1").u64(x.key().origin_chain).u64(x.key().nonce);
        Digest fk = hash(w.bytes(), chain(host).config().hash);
        chain(host).submit_event(fk, fin.serialize());
        final_hashes_.emplace(fk, x.key());
      }
      emit({0, x.key(), Stage::kVerifyDc, t, host, m.prover, 0, verdict}, std::move(r.gas));
    }
  }
}

void Network::produce() {
  const std::uint64_t t = time(1);
  std::vector<chain::ChainId> order = chain_ids();
  order.push_back(rc_.id());
  std::sort(order.begin(), order.end());
  for (chain::ChainId id : order) {
    if (id == rc_.id()) {
      auto b = rc_.chain().produce_block(tick_);
      if (!b) continue;
      for (const auto& x : rc_.on_block(*b)) {
        auto it = ctxs_.find(x.key());
        if (it != ctxs_.end()) it->second.confirmed_rc = true;
        emit({0, x.key(), Stage::kConfirmRc, t, id, 0, 0, "ok"});
      }
      continue;
    }
    chain::Chain& c = chain(id);
    auto b = c.produce_block(tick_);
    if (!b) continue;
    for (const auto& h : b->tx_hashes) {
      if (auto it = sc_hashes_.find(h); it != sc_hashes_.end()) {
        ctxs_.at(it->second).confirmed_sc = true;
        emit({0, it->second, Stage::kConfirmSc, t, id, 0, 0, "ok"});
      } else if (auto f = final_hashes_.find(h); f != final_hashes_.end()) {
        auto st = ctxs_.find(f->second);
        if (st != ctxs_.end()) st->second.confirmed_dc = true;
        emit({0, f->second, Stage::kConfirmDc, t, id, 0, 0, "ok"});
      }
    }
  }
}

const prover::ZkProof& Network::header_proof(const chain::Chain& c, std::uint64_t height,
                                             prover::Backend b) {
  auto key = std::make_tuple(c.id(), height, b);
  auto it = zk_cache_.find(key);
  if (it == zk_cache_.end()) {
    it = zk_cache_.emplace(key, prover::prove_header(c, c.block(height).header, b)).first;
  }
  return it->second;
}

const std::vector<crypto::MerkleProof>& Network::block_proofs(const chain::Chain& c,
                                                              std::uint64_t height) {
  auto key = std::make_pair(c.id(), height);
  auto it = mkl_cache_.find(key);
  if (it == mkl_cache_.end()) {
    const chain::Block& b = c.block(height);
    std::vector<Bytes> leaves;
    leaves.reserve(b.receipts.size());
    for (const auto& r : b.receipts) leaves.push_back(r.serialize());
    it = mkl_cache_.emplace(key, crypto::merkle_prove_all(leaves, c.config().hash)).first;
  }
  return it->second;
}

void Network::prove() {
  for (auto& a : agents_) run_agent(*a);
}

namespace {

void mutate_payload(chain::CrossChainTx& ctx) {
  if (auto* asset = std::get_if<chain::AssetPayload>(&ctx.payload)) {
    asset->amount += 1;
  } else {
    std::get<chain::MessagePayload>(ctx.payload).call.push_back(0x01);
  }
}

}  // namespace

void Network::run_agent(Agent& a) {
  std::vector<chain::ChainId> order = chain_ids();
  order.push_back(rc_.id());
  std::sort(order.begin(), order.end());
  const std::uint64_t t = time(2);
  for (chain::ChainId id : order) {
    const chain::Chain& src = chain_or_rc(id);
    auto mit = a.monitors.find(id);
    if (mit == a.monitors.end()) mit = a.monitors.emplace(id, prover::Monitor(src)).first;
    auto events = mit->second.poll();
    if (a.spec.fault == ProverFault::kSilent) continue;
    const bool from_rc = id == rc_.id();
    for (const auto& ev : events) {
      chain::ChainId target = 0;
      chain::CtxKey key;
      std::uint64_t lc_epoch = 0;
      Bytes event = ev.receipt.event;
      if (from_rc) {
        if (event_tag(event) != kIctxTag) continue;
        IntermediateCtx x = IntermediateCtx::deserialize(event);
        if (!is_dest(x.ctx.dest_chain)) continue;
        target = x.ctx.dest_chain;
        key = x.key();
        lc_epoch = clients_.at(target).lc().epoch;
        if (a.spec.fault == ProverFault::kTampering) {
          mutate_payload(x.ctx);
          event = x.serialize();
        }
      } else {
        if (event_tag(event) != kCtxTag || !rc_.has_source(id)) continue;
        chain::CrossChainTx ctx = chain::CrossChainTx::deserialize(event);
        target = rc_.id();
        key = chain::key_of(ctx);
        lc_epoch = rc_.lc(id).epoch;
        if (a.spec.fault == ProverFault::kTampering) {
          mutate_payload(ctx);
          event = ctx.serialize();
        }
      }
      const chain::BlockHeader& bh = src.block(ev.height).header;
      try {
        auto& sent = a.sent_epoch[{target, id}];
        for (std::uint64_t e = std::max(lc_epoch, sent) + 1; e <= bh.epoch; ++e) {
          std::uint64_t h = e * src.config().epoch_size;
          prover::RelayMessage up;
          up.kind = prover::RelayMessage::Kind::kUpdate;
          up.origin = id;
          up.target = target;
          up.prover = a.spec.id;
          up.header = src.block(h).header;
          up.zk = header_proof(src, h, a.spec.backend);
          bus_.transmit(std::move(up), tick_ + 1);
          sent = e;
        }
        prover::RelayMessage msg;
        msg.kind = prover::RelayMessage::Kind::kReceipt;
        msg.origin = id;
        msg.target = target;
        msg.prover = a.spec.id;
        msg.header = bh;
        msg.zk = header_proof(src, ev.height, a.spec.backend);
        msg.receipt = ev.receipt;
        msg.receipt->event = std::move(event);
        msg.mkl = block_proofs(src, ev.height)[ev.index];
        bus_.transmit(std::move(msg), tick_ + 1);
        emit({0, key, from_rc ? Stage::kProveRc : Stage::kProveSc, t, id, a.spec.id, 0, "ok"});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kProveRefused) throw;
        emit({0, key, from_rc ? Stage::kProveRc : Stage::kProveSc, t, id, a.spec.id, 0,
              "refused"});
      }
    }
  }
}

}  // namespace maprelay::relay
