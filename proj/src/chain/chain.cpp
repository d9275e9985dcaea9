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

#include "maprelay/chain/chain.hpp"

#include <algorithm>

#include "maprelay/common/error.hpp"
#include "maprelay/common/rng.hpp"

namespace maprelay::chain {

std::string_view to_string(RotationKind k) {
  switch (k) {
    case RotationKind::kIdentity: return "identity";
    case RotationKind::kSeededShuffle: return "seeded-shuffle";
    case RotationKind::kStakeDecay: return "stake-decay";
  }
  return "unknown";
}

RotationKind parse_rotation(std::string_view s) {
  for (auto k : {RotationKind::kIdentity, RotationKind::kSeededShuffle, RotationKind::kStakeDecay}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::kConfig, "unknown rotation policy: " + std::string(s));
}

std::vector<std::string> ChainConfig::problems() const {
  std::vector<std::string> e;
  if (epoch_size < 1) e.push_back("epoch_size must be >= 1");
  if (!threshold.valid()) e.push_back("threshold must lie in [1/2, 1]");
  if (validators.empty()) e.push_back("chain needs at least one validator");
  std::uint64_t total = 0;
  std::set<std::string> seeds;
  for (const auto& v : validators) {
    if (v.seed.empty()) e.push_back("validator seed must be nonempty");
    else if (!seeds.insert(v.seed).second) e.push_back("repeated validator seed: " + v.seed);
    total += v.weight;
  }
  if (!validators.empty() && total == 0) e.push_back("total validator weight must be positive");
  return e;
}

void ChainConfig::validate() const {
  auto e = problems();
  MAPRELAY_ENFORCE(e.empty(), ErrorCode::kConfig, e.empty() ? "" : e.front());
}

Chain::Chain(ChainConfig config) : config_(std::move(config)) {
  config_.validate();
  for (std::uint32_t i = 0; i < config_.rotation.extra_candidates; ++i) {
    const auto& like = config_.validators[i % config_.validators.size()];
    candidates_.push_back(
        {"chain" + std::to_string(config_.chain_id) + "-cand-" + std::to_string(i), like.weight});
  }
  crypto::ValidatorSet genesis = set_from_specs(0, config_.validators);
  sets_.emplace(0, genesis);
  Block b = build_block(0, config_.genesis_timestamp, {}, {}, genesis, Digest{});
  b.header.signature = sign_with(genesis, crypto::Bitmap(genesis.size(), true),
                                 b.header.signing_payload());
  blocks_.push_back(std::move(b));
}

void Chain::ensure_key(const std::string& seed) const {
  if (keys_by_seed_.count(seed)) return;
  crypto::KeyPair kp = crypto::keygen(seed);
  secrets_.emplace(crypto::compress(kp.public_key), kp.secret);
  keys_by_seed_.emplace(seed, kp);
}

crypto::ValidatorSet Chain::set_from_specs(std::uint64_t epoch,
                                           const std::vector<ValidatorSpec>& specs) const {
  std::vector<std::pair<crypto::G2, std::uint64_t>> members;
  for (const auto& s : specs) {
    ensure_key(s.seed);
    members.emplace_back(keys_by_seed_.at(s.seed).public_key, s.weight);
  }
  return crypto::ValidatorSet::make(epoch, std::move(members));
}

const crypto::Fr& Chain::secret_of(const Bytes& pk_bytes) const {
  auto it = secrets_.find(pk_bytes);
  MAPRELAY_ENFORCE(it != secrets_.end(), ErrorCode::kNotFound, "no secret for validator key");
  return it->second;
}

const Block& Chain::block(std::uint64_t height) const {
  MAPRELAY_ENFORCE(height < blocks_.size(), ErrorCode::kNotFound, "no block at that height");
  return blocks_[height];
}

const crypto::ValidatorSet& Chain::validator_set(std::uint64_t epoch) const {
  auto it = sets_.find(epoch);
  MAPRELAY_ENFORCE(it != sets_.end(), ErrorCode::kNotFound, "unknown epoch");
  return it->second;
}

const crypto::ValidatorSet& Chain::next_signing_set() const { return current_set(); }

Digest Chain::submit_tx(const CrossChainTx& ctx) {
  MAPRELAY_ENFORCE(ctx.dest_chain != config_.chain_id, ErrorCode::kInvalidArgument,
                   "destination equals the submitting chain");
  MAPRELAY_ENFORCE(ctx.origin_chain == config_.chain_id, ErrorCode::kInvalidArgument,
                   "ctx origin does not match this chain");
  return submit_event(ctx.hash(config_.hash), ctx.serialize());
}

Digest Chain::submit_event(const Digest& key, Bytes event) {
  MAPRELAY_ENFORCE(!locations_.count(key), ErrorCode::kDuplicate, "transaction already included");
  for (const auto& p : pending_) {
    MAPRELAY_ENFORCE(p.key != key, ErrorCode::kDuplicate, "transaction already pending");
  }
  pending_.push_back({key, std::move(event)});
  return key;
}

crypto::ValidatorSet Chain::rotate_validators(std::uint64_t epoch) const {
  MAPRELAY_ENFORCE(epoch >= 1, ErrorCode::kInvalidArgument, "rotation needs epoch >= 1");
  const auto& pol = config_.rotation;
  switch (pol.kind) {
    case RotationKind::kIdentity:
      return validator_set(epoch - 1).with_epoch(epoch);
    case RotationKind::kSeededShuffle: {
      std::vector<ValidatorSpec> pool = config_.validators;
      pool.insert(pool.end(), candidates_.begin(), candidates_.end());
      DetRng rng = DetRng::from_label("rotation/shuffle", config_.chain_id, epoch);
      rng.shuffle(pool);
      pool.resize(config_.validators.size());
      return set_from_specs(epoch, pool);
    }
    case RotationKind::kStakeDecay: {
      DetRng rng = DetRng::from_label("rotation/decay", config_.chain_id, epoch);
      std::vector<std::pair<crypto::G2, std::uint64_t>> members;
      for (const auto& e : validator_set(epoch - 1).entries()) {
        std::uint64_t cut = e.weight * rng.below(pol.decay_percent + 1) / 100;
        members.emplace_back(e.pk, std::max<std::uint64_t>(1, e.weight - cut));
      }
      return crypto::ValidatorSet::make(epoch, std::move(members));
    }
  }
  throw Error(ErrorCode::kConfig, "unknown rotation policy");
}

AggregateSignature Chain::sign_with(const crypto::ValidatorSet& vs, const crypto::Bitmap& signers,
                                    ByteView payload) const {
  MAPRELAY_ENFORCE(signers.size() == vs.size(), ErrorCode::kBitmapMismatch,
                   "signer bitmap does not match validator set");
  // Aggregating individual signatures H(m)*sk_i equals one multiplication by
  // the summed secrets.
  crypto::Fr sum = crypto::Fr::zero();
  bool any = false;
  for (std::size_t i = 0; i < signers.size(); ++i) {
    if (!signers[i]) continue;
    sum += secret_of(vs.entries()[i].pk_bytes);
    any = true;
  }
  AggregateSignature sig;
  sig.bitmap = signers;
  sig.point = any ? crypto::sign(sum, payload) : crypto::G1::infinity();
  return sig;
}

Block Chain::build_block(std::uint64_t height, std::uint64_t now, std::vector<Digest> txs,
                         std::vector<ReceiptMessage> receipts, const crypto::ValidatorSet& carried,
                         const Digest& parent) {
  Block b;
  BlockHeader& h = b.header;
  h.chain_id = config_.chain_id;
  h.height = height;
  h.epoch = height / config_.epoch_size;
  h.epoch_size = config_.epoch_size;
  h.timestamp = now;
  h.parent = parent;
  std::vector<Bytes> leaves;
  leaves.reserve(receipts.size());
  for (const auto& r : receipts) leaves.push_back(r.serialize());
  h.receipt_root = crypto::merkle_root(leaves, config_.hash);
  h.mode = config_.mode;
  if (config_.mode == HeaderMode::kFullSet) {
    h.validators = carried;
  } else {
    h.commitment = crypto::commit_validator_set(carried, config_.hash);
  }
  b.tx_hashes = std::move(txs);
  b.receipts = std::move(receipts);
  return b;
}

std::optional<Block> Chain::produce_block(std::uint64_t now) {
  const std::uint64_t h = height() + 1;
  const crypto::ValidatorSet& signers_set = current_set();
  crypto::Bitmap bm(signers_set.size());
  for (std::size_t i = 0; i < bm.size(); ++i) {
    bm[i] = !withholding_.count(signers_set.entries()[i].pk_bytes);
  }
  if (!config_.threshold.met(signers_set.weight_of(bm), signers_set.total_weight())) {
    ++withheld_;
    return std::nullopt;
  }

  const bool transition = h % config_.epoch_size == 0;
  std::vector<Digest> txs;
  std::vector<ReceiptMessage> receipts;
  std::optional<crypto::ValidatorSet> next;
  if (transition) {
    next = rotate_validators(h / config_.epoch_size);
  } else {
    while (!pending_.empty()) {
      Pending p = std::move(pending_.front());
      pending_.pop_front();
      receipts.push_back({p.key, std::move(p.event), h});
      txs.push_back(p.key);
    }
  }
  const crypto::ValidatorSet& carried = transition ? *next : signers_set;
  Digest parent = blocks_.back().header.hash(config_.hash);
  Block b = build_block(h, now, std::move(txs), std::move(receipts), carried, parent);
  b.header.signature = sign_with(signers_set, bm, b.header.signing_payload());
  for (std::size_t i = 0; i < b.tx_hashes.size(); ++i) locations_[b.tx_hashes[i]] = {h, i};
  if (next) sets_.emplace(next->epoch(), *next);
  blocks_.push_back(b);
  return b;
}

Confirmation Chain::confirm(const Digest& tx_hash) const {
  auto it = locations_.find(tx_hash);
  MAPRELAY_ENFORCE(it != locations_.end(), ErrorCode::kNotFound, "transaction not confirmed");
  const Block& b = blocks_[it->second.height];
  std::vector<Bytes> leaves;
  leaves.reserve(b.receipts.size());
  for (const auto& r : b.receipts) leaves.push_back(r.serialize());
  Confirmation c;
  c.header = b.header;
  c.receipt_root = b.header.receipt_root;
  c.receipt = b.receipts[it->second.index];
  c.proof = crypto::merkle_prove(leaves, it->second.index, config_.hash);
  return c;
}

}  // namespace maprelay::chain
