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

#include "maprelay/harness/attacks.hpp"

#include <algorithm>

#include "maprelay/common/error.hpp"
#include "maprelay/common/rng.hpp"

namespace maprelay::harness {

using nlohmann::json;

json LivenessVerdict::to_json() const {
  return {{"name", name},         {"case", fault_case},  {"expected_live", expected_live},
          {"live", live},         {"submitted", submitted}, {"confirmed", confirmed},
          {"stalled", stalled},   {"rc_withheld_blocks", rc_withheld_blocks},
          {"as_expected", as_expected()}};
}

LivenessVerdict attack_liveness(const Scenario& base, const LivenessVariant& v) {
  Scenario s = base;
  s.workload.count = v.ctx_count;
  s.provers.clear();
  for (std::size_t i = 0; i < v.provers; ++i) {
    s.provers.push_back({i + 1, i < v.silent ? relay::ProverFault::kSilent
                                             : relay::ProverFault::kHonest});
  }
  std::erase_if(s.corruption, [&](const Corruption& c) { return c.chain == s.relay_chain.chain_id; });
  if (v.rc_num > 0) {
    s.corruption.push_back({s.relay_chain.chain_id, v.rc_num, v.rc_den, CorruptionKind::kWithhold});
  }
  RunArtifacts a = run(s);
  LivenessVerdict out;
  out.name = v.name;
  const bool no_carrier = v.silent >= v.provers;
  const bool withholding = 3 * v.rc_num >= v.rc_den;
  out.fault_case = no_carrier ? 1 : withholding ? 2 : 0;
  out.expected_live = !no_carrier && !withholding;
  out.live = a.liveness_held();
  out.submitted = a.submitted;
  out.confirmed = a.confirmed_dc;
  out.stalled = a.stalled.size();
  out.rc_withheld_blocks =
      a.summary["withheld_blocks"][std::to_string(s.relay_chain.chain_id)].get<std::uint64_t>();
  return out;
}

std::string_view to_string(Forgery f) {
  switch (f) {
    case Forgery::kPayloadMutation: return "payload-mutation";
    case Forgery::kProofReuse: return "proof-reuse";
    case Forgery::kHeaderForgery: return "header-forgery";
    case Forgery::kStaleEpochReplay: return "stale-epoch-replay";
    case Forgery::kBitmapInflation: return "bitmap-inflation";
  }
  return "?";
}

json ConsistencyReport::to_json() const {
  json kinds = json::object();
  for (const auto& [k, t] : by_kind) {
    kinds[std::string(to_string(k))] = {{"attempted", t.attempted},
                                        {"accepted", t.accepted},
                                        {"via_bus", t.via_bus},
                                        {"rejections", t.rejections}};
  }
  return {{"attempted", attempted},
          {"accepted", accepted},
          {"unbacked", unbacked},
          {"benign_duplicate_idempotent", benign_duplicate_idempotent},
          {"largest_coalition_percent", largest_coalition_percent},
          {"held", held()},
          {"by_kind", kinds}};
}

json CollusionReport::to_json() const {
  return {{"fraction", {num, den}},
          {"dest", dest},
          {"forged_accepted", forged_accepted},
          {"verdict", verdict},
          {"unbacked_detected", unbacked_detected}};
}

namespace {

prover::ZkProof self_attested(const prover::ZkStatement& s, prover::Backend b) {
  prover::ZkProof p;
  p.backend = b;
  p.inputs = s.inputs;
  p.witness = s.witness;
  p.attestation = prover::attest(b, p.inputs, p.witness);
  return p;
}

// An honest proof when the header's quorum holds, a self-attested one
// otherwise.
prover::ZkProof proof_for(const chain::Chain& c, const chain::BlockHeader& bh, prover::Backend b) {
  auto s = prover::header_statement(c, bh);
  if (prover::check_relation(s, b) == prover::RelationFailure::kNone) return prover::prove(s, b);
  return self_attested(s, b);
}

std::vector<Bytes> leaves_of(const chain::Block& b) {
  std::vector<Bytes> out;
  for (const auto& r : b.receipts) out.push_back(r.serialize());
  return out;
}

// A genuine, freshly verifiable receipt on one hop.
struct Base {
  bool to_rc = true;  // SC -> RC, else RC -> DC
  chain::ChainId chain = 0;  // chain the header belongs to
  chain::ChainId target = 0;
  chain::ReceiptMessage receipt;
  chain::BlockHeader header;
  crypto::MerkleProof mkl;
  prover::ZkProof zk;
};

struct Attempt {
  Forgery kind;
  bool to_rc = true;
  chain::ChainId target = 0;
  chain::ReceiptMessage receipt;  // event body carries the ctx or ictx
  chain::BlockHeader header;
  crypto::MerkleProof mkl;
  prover::ZkProof zk;
  bool update = false;  // an epoch update rather than a receipt
};

class Lab {
 public:
  Lab(const Scenario& s, const ConsistencyVariant& v) : rng_(DetRng::from_label("forgery", v.seed)) {
    Scenario h = s;
    h.workload.count = v.honest_ctx;
    std::uint64_t next_id = 1;
    for (const auto& p : h.provers) next_id = std::max(next_id, p.id + 1);
    h.provers.push_back({next_id, relay::ProverFault::kTampering});
    std::erase_if(h.corruption, [](const Corruption& c) { return c.kind == CorruptionKind::kWithhold; });
    net_ = build_network(h);
    for (const auto& c : h.chains) {
      if (c.source) sources_.push_back(c.config.chain_id);
      if (c.dest) dests_.push_back(c.config.chain_id);
    }
    for (const auto& w : synthetic_workload(h)) {
      net_->submit({w.from, w.to, net_->next_nonce(w.from), w.payload});
    }
    net_->run_until_settled(h.max_ticks);
    // One last ctx per source, submitted together so they share RC blocks.
    for (std::size_t i = 0; i < sources_.size(); ++i) {
      chain::ChainId from = sources_[i];
      chain::ChainId to = dests_[i % dests_.size()] == from ? dests_[(i + 1) % dests_.size()]
                                                             : dests_[i % dests_.size()];
      if (to == from) continue;
      net_->submit({from, to, net_->next_nonce(from), chain::AssetPayload{"USDC", 1000 + i, "transfer"}});
    }
    net_->run_until_settled(h.max_ticks);
    collect();
  }

  relay::Network& net() { return *net_; }
  DetRng& rng() { return rng_; }
  const std::vector<Base>& fresh(bool to_rc) const { return to_rc ? fresh_rc_ : fresh_dc_; }
  const std::vector<Base>& stale(bool to_rc) const { return to_rc ? stale_rc_ : stale_dc_; }

  const chain::Chain& chain_of(chain::ChainId id) const {
    return id == net_->rc().id() ? net_->rc().chain() : net_->chain(id);
  }
  std::uint64_t lc_epoch(bool to_rc, chain::ChainId chain, chain::ChainId target) {
    return to_rc ? net_->rc().lc(chain).epoch : net_->rc_client(target).lc().epoch;
  }
  HashAlgo algo_of(bool to_rc) const {
    return to_rc ? net_->chain(sources_.front()).config().hash : net_->rc().chain().config().hash;
  }

  // A random coalition of vs whose weight stays strictly below 2/3.
  crypto::Bitmap minority(const crypto::ValidatorSet& vs, std::uint64_t* percent) {
    std::vector<std::size_t> idx(vs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng_.shuffle(idx);
    crypto::Bitmap b(vs.size(), false);
    std::uint64_t w = 0;
    const std::uint64_t total = vs.total_weight();
    for (auto i : idx) {
      std::uint64_t wi = vs.entries()[i].weight;
      if (3 * (w + wi) < 2 * total && rng_.chance(3, 4)) {
        b[i] = true;
        w += wi;
      }
    }
    *percent = std::max(*percent, total ? 100 * w / total : 0);
    return b;
  }

  chain::ChainId other_dest(chain::ChainId not_this) const {
    for (auto d : dests_) {
      if (d != not_this) return d;
    }
    return not_this;
  }
  const std::vector<chain::ChainId>& sources() const { return sources_; }

 private:
  Base make(bool to_rc, chain::ChainId chain, chain::ChainId target, const chain::Block& b,
            std::size_t i) {
    Base x;
    x.to_rc = to_rc;
    x.chain = chain;
    x.target = target;
    x.receipt = b.receipts[i];
    x.header = b.header;
    x.mkl = crypto::merkle_prove(leaves_of(b), i, chain_of(chain).config().hash);
    x.zk = prover::prove_header(chain_of(chain), b.header, prover::Backend::kTransparent);
    return x;
  }

  void collect() {
    const relay::RelayChain& rc = net_->rc();
    for (const auto& [k, st] : net_->submitted()) {
      const chain::Chain& sc = net_->chain(k.origin_chain);
      auto conf = sc.confirm(st.ctx.hash(sc.config().hash));
      const chain::Block& b = sc.block(conf.header.height);
      std::size_t i = std::find(b.tx_hashes.begin(), b.tx_hashes.end(), conf.receipt.tx_hash) -
                      b.tx_hashes.begin();
      bool fresh = b.header.epoch == rc.lc(k.origin_chain).epoch;
      if (fresh || stale_rc_.size() < 16) {
        (fresh ? fresh_rc_ : stale_rc_).push_back(make(true, k.origin_chain, rc.id(), b, i));
      }
      const relay::IntermediateCtx* x = rc.find(k);
      if (!x || !x->rc_receipt) continue;
      const chain::Block& rb = rc.chain().block(x->rc_height);
      std::size_t j = std::find(rb.tx_hashes.begin(), rb.tx_hashes.end(), x->rc_receipt->tx_hash) -
                      rb.tx_hashes.begin();
      bool rfresh = rb.header.epoch == net_->rc_client(st.ctx.dest_chain).lc().epoch;
      if (rfresh || stale_dc_.size() < 16) {
        (rfresh ? fresh_dc_ : stale_dc_)
            .push_back(make(false, rc.id(), st.ctx.dest_chain, rb, j));
      }
    }
    MAPRELAY_ENFORCE(!fresh_rc_.empty() && !fresh_dc_.empty(), ErrorCode::kInvalidArgument,
                     "forgery lab found no fresh receipts");
  }

  DetRng rng_;
  std::unique_ptr<relay::Network> net_;
  std::vector<chain::ChainId> sources_, dests_;
  std::vector<Base> fresh_rc_, fresh_dc_, stale_rc_, stale_dc_;
};

// ctx or ictx body edits. Returns the edited event body.
Bytes mutate_event(const Base& b, DetRng& rng, Lab& lab) {
  chain::CrossChainTx ctx;
  relay::IntermediateCtx x;
  if (b.to_rc) {
    ctx = chain::CrossChainTx::deserialize(b.receipt.event);
  } else {
    x = relay::IntermediateCtx::deserialize(b.receipt.event);
    ctx = x.ctx;
  }
  switch (rng.below(b.to_rc ? 6 : 8)) {
    case 0:
      if (auto* a = std::get_if<chain::AssetPayload>(&ctx.payload)) {
        a->amount += rng.range(1, 1'000'000);
      } else {
        std::get<chain::MessagePayload>(ctx.payload).call.push_back(0x01);
      }
      break;
    case 1:
      if (auto* a = std::get_if<chain::AssetPayload>(&ctx.payload)) {
        a->token = a->token == "USDC" ? "WBTC" : "USDC";
      } else {
        auto& c = std::get<chain::MessagePayload>(ctx.payload).call;
        c[rng.below(c.size())] ^= 0x80;
      }
      break;
    case 2:
      ctx.payload = chain::AssetPayload{"USDC", rng.range(1, 1ull << 40), "mint"};
      break;
    case 3:
      ctx.dest_chain = lab.other_dest(ctx.dest_chain);
      break;
    case 4:
      ctx.nonce += rng.range(1, 1'000'000);
      break;
    case 5:
      ctx.payload = chain::MessagePayload{Bytes(rng.range(1, 16), 0xee)};
      break;
    case 6:
      x.source_height += 1;
      break;
    default:
      x.source_tx_hash.bytes[rng.below(32)] ^= 1;
      break;
  }
  if (b.to_rc) return ctx.serialize();
  x.ctx = ctx;
  return x.serialize();
}

// A new ctx or ictx nobody submitted on the hop of b.
Bytes fresh_event(const Base& b, DetRng& rng, Lab& lab) {
  chain::CrossChainTx ctx;
  ctx.origin_chain = b.to_rc ? b.chain : lab.sources()[rng.below(lab.sources().size())];
  ctx.dest_chain = b.to_rc ? lab.other_dest(b.chain) : b.target;
  ctx.nonce = 1'000'000'000 + rng.below(1'000'000);
  ctx.payload = chain::AssetPayload{"USDC", rng.range(1, 1ull << 40), "transfer"};
  if (b.to_rc) return ctx.serialize();
  relay::IntermediateCtx x;
  x.ctx = ctx;
  x.source_height = rng.range(1, 100);
  return x.serialize();
}

chain::ReceiptMessage receipt_for(const Base& b, Bytes event, HashAlgo algo) {
  chain::ReceiptMessage m;
  if (b.to_rc) {
    m.tx_hash = chain::CrossChainTx::deserialize(event).hash(algo);
  } else {
    m.tx_hash = relay::ictx_key(relay::IntermediateCtx::deserialize(event).key(), algo);
  }
  m.event = std::move(event);
  m.height = b.header.height;
  return m;
}

Attempt from_base(Forgery k, const Base& b) {
  Attempt a;
  a.kind = k;
  a.to_rc = b.to_rc;
  a.target = b.target;
  a.receipt = b.receipt;
  a.header = b.header;
  a.mkl = b.mkl;
  a.zk = b.zk;
  return a;
}

// A header of b's chain carrying `extra` next to b's receipts, with a root
// that commits to them. Returns the proof for `extra` via mkl.
chain::BlockHeader rebuild_header(const Base& b, const chain::Chain& c, const chain::ReceiptMessage& extra,
                                  crypto::MerkleProof* mkl) {
  const chain::Block& blk = c.block(b.header.height);
  std::vector<Bytes> leaves = leaves_of(blk);
  leaves.push_back(extra.serialize());
  chain::BlockHeader h = b.header;
  h.receipt_root = crypto::merkle_root(leaves, c.config().hash);
  *mkl = crypto::merkle_prove(leaves, leaves.size() - 1, c.config().hash);
  return h;
}

Attempt make_attempt(Forgery kind, Lab& lab, std::uint64_t* coalition) {
  DetRng& rng = lab.rng();
  const bool to_rc = rng.chance(1, 2);
  const auto& fresh = lab.fresh(to_rc);
  const Base& b = fresh[rng.below(fresh.size())];
  const chain::Chain& c = lab.chain_of(b.chain);
  const HashAlgo algo = c.config().hash;
  Attempt a = from_base(kind, b);
  switch (kind) {
    case Forgery::kPayloadMutation: {
      a.receipt.event = mutate_event(b, rng, lab);
      break;
    }
    case Forgery::kProofReuse: {
      const auto& pool = rng.chance(1, 2) || lab.stale(to_rc).empty() ? fresh : lab.stale(to_rc);
      const Base& o = pool[rng.below(pool.size())];
      switch (rng.below(3)) {
        case 0:  // another receipt's Merkle path under b's header
          a.mkl = o.mkl;
          if (o.receipt == b.receipt) a.receipt.event = fresh_event(b, rng, lab);
          break;
        case 1:  // another header's proof
          a.zk = o.zk;
          if (o.header.height == b.header.height) a.header.timestamp += 1;
          break;
        default: {  // a new record in a rebuilt tree, with the old header proof
          auto m = receipt_for(b, fresh_event(b, rng, lab), algo);
          a.receipt = m;
          a.header = rebuild_header(b, c, m, &a.mkl);
          break;
        }
      }
      break;
    }
    case Forgery::kHeaderForgery: {
      auto m = receipt_for(b, fresh_event(b, rng, lab), algo);
      a.receipt = m;
      a.header = rebuild_header(b, c, m, &a.mkl);
      const crypto::ValidatorSet& vs = c.validator_set(a.header.signing_epoch());
      switch (rng.below(3)) {
        case 0:  // signed by a minority coalition
          a.header.signature = c.sign_with(vs, lab.minority(vs, coalition), a.header.signing_payload());
          a.zk = proof_for(c, a.header, prover::Backend::kTransparent);
          break;
        case 1:  // genuine signature over the original header
          a.zk = proof_for(c, a.header, prover::Backend::kTransparent);
          break;
        default: {  // coalition signs, the proof claims full weight
          a.header.signature = c.sign_with(vs, lab.minority(vs, coalition), a.header.signing_payload());
          auto s = prover::header_statement(c, a.header);
          s.inputs.claimed_weight = vs.total_weight();
          a.zk = self_attested(s, rng.chance(1, 2) ? prover::Backend::kTransparent
                                                   : prover::Backend::kCounting);
          break;
        }
      }
      break;
    }
    case Forgery::kStaleEpochReplay: {
      const auto& stale = lab.stale(to_rc);
      const std::uint64_t cur = lab.lc_epoch(to_rc, b.chain, b.target);
      std::uint64_t pick = rng.below(3);
      if (pick == 0 && !stale.empty()) {  // an old, once valid receipt
        a = from_base(kind, stale[rng.below(stale.size())]);
        break;
      }
      if (pick == 1 && cur >= 1) {  // an epoch update the LC has already passed
        std::uint64_t e = rng.range(1, cur);
        a.update = true;
        a.header = c.block(e * c.config().epoch_size).header;
        a.zk = prover::prove_header(c, a.header, prover::Backend::kTransparent);
        break;
      }
      // The previous epoch's set signs a header relabelled to the current one.
      std::uint64_t old = cur == 0 ? 0 : cur - 1;
      const crypto::ValidatorSet& vs = c.validator_set(old);
      auto m = receipt_for(b, fresh_event(b, rng, lab), algo);
      a.receipt = m;
      a.header = rebuild_header(b, c, m, &a.mkl);
      a.header.signature = c.sign_with(vs, crypto::Bitmap(vs.size(), true), a.header.signing_payload());
      prover::ZkStatement s = prover::header_statement(c, a.header);
      s.witness.validators = vs;
      s.witness.bitmap = crypto::Bitmap(vs.size(), true);
      // Same set as now when rotation left it unchanged; leave the
      // commitment the verifier expects so only the quorum is wrong.
      if (vs.with_epoch(a.header.signing_epoch()) == c.validator_set(a.header.signing_epoch())) {
        crypto::Bitmap bm = lab.minority(vs, coalition);
        a.header.signature = c.sign_with(vs, bm, a.header.signing_payload());
        s = prover::header_statement(c, a.header);
      }
      a.zk = self_attested(s, prover::Backend::kTransparent);
      break;
    }
    case Forgery::kBitmapInflation: {
      auto m = receipt_for(b, fresh_event(b, rng, lab), algo);
      a.receipt = m;
      a.header = rebuild_header(b, c, m, &a.mkl);
      const crypto::ValidatorSet& vs = c.validator_set(a.header.signing_epoch());
      crypto::Bitmap signers = lab.minority(vs, coalition);
      a.header.signature = c.sign_with(vs, signers, a.header.signing_payload());
      crypto::Bitmap inflated = signers;
      std::size_t extra = rng.range(1, vs.size());
      for (std::size_t i = 0; i < inflated.size() && extra > 0; ++i) {
        if (!inflated[i]) {
          inflated[i] = true;
          --extra;
        }
      }
      a.header.signature.bitmap = inflated;
      a.zk = proof_for(c, a.header, rng.chance(1, 2) ? prover::Backend::kTransparent
                                                     : prover::Backend::kCounting);
      break;
    }
  }
  return a;
}

struct Outcome {
  bool accepted = false;
  std::string verdict;
};

Outcome inject_direct(Lab& lab, const Attempt& a) {
  relay::Network& net = lab.net();
  if (a.update) {
    if (a.to_rc) {
      auto before = net.rc().lc(a.header.chain_id);
      auto u = net.rc().apply_update(a.header, a.zk);
      bool moved = !(net.rc().lc(a.header.chain_id).commitment == before.commitment) ||
                   net.rc().lc(a.header.chain_id).epoch != before.epoch;
      return {u.ok() || moved, std::string(lc::to_string(u.rejection))};
    }
    auto& client = net.rc_client(a.target);
    auto before = client.lc();
    auto u = client.apply_update(a.header, a.zk);
    bool moved = !(client.lc().commitment == before.commitment) || client.lc().epoch != before.epoch;
    return {u.ok() || moved, std::string(lc::to_string(u.rejection))};
  }
  relay::Received r;
  if (a.to_rc) {
    auto ctx = chain::CrossChainTx::deserialize(a.receipt.event);
    if (!net.rc().has_source(ctx.origin_chain)) return {false, "unregistered"};
    r = net.rc().relay_receive(ctx, a.header, a.mkl, a.zk);
  } else {
    auto x = relay::IntermediateCtx::deserialize(a.receipt.event);
    r = net.rc_client(a.target).dest_receive(x, a.header, a.mkl, a.zk);
  }
  if (r.ok()) return {!r.duplicate, r.duplicate ? "duplicate" : "ok"};
  return {false, std::string(lc::to_string(r.rejection))};
}

void inject_bus(Lab& lab, const Attempt& a) {
  prover::RelayMessage m;
  m.kind = a.update ? prover::RelayMessage::Kind::kUpdate : prover::RelayMessage::Kind::kReceipt;
  m.origin = a.header.chain_id;
  m.target = a.target;
  m.prover = 0xbad;
  m.header = a.header;
  m.zk = a.zk;
  if (!a.update) {
    m.receipt = a.receipt;
    m.mkl = a.mkl;
  }
  lab.net().bus().transmit(std::move(m), lab.net().now_tick() + 1);
}

}  // namespace

ConsistencyReport attack_consistency(const Scenario& base, const ConsistencyVariant& v) {
  Lab lab(base, v);
  relay::Network& net = lab.net();
  ConsistencyReport rep;

  // Benign re-delivery of a genuine bundle: a no-op on both hops.
  {
    const Base& b = lab.fresh(true).front();
    auto ctx = chain::CrossChainTx::deserialize(b.receipt.event);
    auto ledger_before = net.rc().ledger().size();
    auto r1 = net.rc().relay_receive(ctx, b.header, b.mkl, b.zk);
    const Base& d = lab.fresh(false).front();
    auto x = relay::IntermediateCtx::deserialize(d.receipt.event);
    auto conf_before = net.rc_client(d.target).confirmed().size();
    auto r2 = net.rc_client(d.target).dest_receive(x, d.header, d.mkl, d.zk);
    rep.benign_duplicate_idempotent = r1.ok() && r1.duplicate && r2.ok() && r2.duplicate &&
                                      net.rc().ledger().size() == ledger_before &&
                                      net.rc_client(d.target).confirmed().size() == conf_before;
  }

  struct Pending {
    Forgery kind;
    bool to_rc;
    chain::CtxKey key;
  };
  std::vector<Pending> bus;
  for (std::uint64_t i = 0; i < v.forgeries; ++i) {
    Forgery kind = kAllForgeries[i % std::size(kAllForgeries)];
    Attempt a = make_attempt(kind, lab, &rep.largest_coalition_percent);
    ForgeryTally& t = rep.by_kind[kind];
    ++t.attempted;
    ++rep.attempted;
    if (!a.update && lab.rng().below(100) < v.bus_percent) {
      ++t.via_bus;
      chain::CtxKey key = a.to_rc ? chain::key_of(chain::CrossChainTx::deserialize(a.receipt.event))
                                  : relay::IntermediateCtx::deserialize(a.receipt.event).key();
      bus.push_back({kind, a.to_rc, key});
      inject_bus(lab, a);
      continue;
    }
    Outcome o = inject_direct(lab, a);
    t.rejections[o.verdict]++;
    if (o.accepted) {
      ++t.accepted;
      ++rep.accepted;
    }
  }
  net.tick();
  for (const auto& p : bus) {
    ForgeryTally& t = rep.by_kind[p.kind];
    bool accepted = false;
    if (p.to_rc) {
      const relay::IntermediateCtx* x = net.rc().find(p.key);
      auto it = net.submitted().find(p.key);
      accepted = x && (it == net.submitted().end() || !(it->second.ctx == x->ctx));
    }
    t.rejections[accepted ? "ok" : "rejected-on-delivery"]++;
    if (accepted) {
      ++t.accepted;
      ++rep.accepted;
    }
  }
  // Everything on RC's ledger was genuinely submitted with that payload.
  for (const auto& [k, x] : net.rc().ledger()) {
    auto it = net.submitted().find(k);
    if (it == net.submitted().end() || !(it->second.ctx == x.ctx)) ++rep.accepted;
  }
  rep.unbacked = net.unbacked_confirmations().size();
  return rep;
}

CollusionReport attack_collusion(const Scenario& base, std::uint64_t num, std::uint64_t den) {
  Scenario s = base;
  s.workload.count = std::min<std::uint64_t>(s.workload.count, 10);
  auto net = build_network(s);
  for (const auto& w : synthetic_workload(s)) {
    net->submit({w.from, w.to, net->next_nonce(w.from), w.payload});
  }
  net->run_until_settled(s.max_ticks);

  CollusionReport rep;
  rep.num = num;
  rep.den = den;
  const chain::Chain& rc = net->rc().chain();
  rep.dest = net->submitted().begin()->second.ctx.dest_chain;
  relay::RcClient& client = net->rc_client(rep.dest);
  const std::uint64_t e = client.lc().epoch;
  const std::uint64_t E = rc.config().epoch_size;
  const crypto::ValidatorSet& vs = rc.validator_set(e);

  relay::IntermediateCtx x;
  x.ctx.origin_chain = net->submitted().begin()->first.origin_chain;
  x.ctx.dest_chain = rep.dest;
  x.ctx.nonce = 4'000'000'000ull;
  x.ctx.payload = chain::AssetPayload{"USDC", 1'000'000'000, "mint"};
  x.source_height = 1;
  chain::ReceiptMessage m{relay::ictx_key(x.key(), rc.config().hash), x.serialize(),
                          e * E + (E > 1 ? 1 : 0)};
  MAPRELAY_ENFORCE(E > 1, ErrorCode::kInvalidArgument, "collusion needs epoch_size > 1");
  std::vector<Bytes> leaves{m.serialize()};

  chain::BlockHeader h = rc.block(std::min(rc.height(), e * E + 1)).header;
  h.height = m.height;
  h.epoch = e;
  h.timestamp += 1;
  h.receipt_root = crypto::merkle_root(leaves, rc.config().hash);
  h.commitment = crypto::commit_validator_set(vs, rc.config().hash);
  h.signature = rc.sign_with(vs, corrupted_members(vs, num, den), h.signing_payload());
  auto mkl = crypto::merkle_prove(leaves, 0, rc.config().hash);
  auto zk = proof_for(rc, h, prover::Backend::kTransparent);
  auto r = client.dest_receive(x, h, mkl, zk);
  rep.forged_accepted = r.ok() && !r.duplicate;
  rep.verdict = r.ok() ? "ok" : std::string(lc::to_string(r.rejection));
  auto unbacked = net->unbacked_confirmations();
  rep.unbacked_detected = std::find(unbacked.begin(), unbacked.end(), x.key()) != unbacked.end();
  return rep;
}

bool AttackSuite::covers_all_cases() const {
  bool l1 = false, l2 = false;
  for (const auto& v : liveness) {
    l1 |= v.fault_case == 1;
    l2 |= v.fault_case == 2;
  }
  bool c1 = consistency.attempted > 0;
  for (auto f : kAllForgeries) {
    auto it = consistency.by_kind.find(f);
    c1 &= it != consistency.by_kind.end() && it->second.attempted > 0;
  }
  bool c2 = 3 * collusion_above.num >= 2 * collusion_above.den;
  return l1 && l2 && c1 && c2;
}

bool AttackSuite::all_as_expected() const {
  for (const auto& v : liveness) {
    if (!v.as_expected()) return false;
  }
  return consistency.held() && !collusion_below.forged_accepted && collusion_above.forged_accepted;
}

json AttackSuite::to_json() const {
  json l = json::array();
  for (const auto& v : liveness) l.push_back(v.to_json());
  return {{"liveness", l},
          {"consistency", consistency.to_json()},
          {"collusion_below", collusion_below.to_json()},
          {"collusion_above", collusion_above.to_json()},
          {"covers_all_cases", covers_all_cases()},
          {"all_as_expected", all_as_expected()}};
}

AttackSuite attack_suite(const Scenario& base, const ConsistencyVariant& cv) {
  AttackSuite s;
  s.liveness.push_back(attack_liveness(base, {"one-silent-of-two", 2, 1, 0, 1, 30}));
  s.liveness.push_back(attack_liveness(base, {"rc-withhold-3/10", 1, 0, 3, 10, 30}));
  s.liveness.push_back(attack_liveness(base, {"all-silent", 2, 2, 0, 1, 10}));
  s.liveness.push_back(attack_liveness(base, {"rc-withhold-2/5", 2, 0, 2, 5, 10}));
  s.consistency = attack_consistency(base, cv);
  s.collusion_below = attack_collusion(base, 3, 5);
  s.collusion_above = attack_collusion(base, 7, 10);
  return s;
}

}  // namespace maprelay::harness
