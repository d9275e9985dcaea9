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

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "maprelay/chain/types.hpp"
#include "maprelay/crypto/bls.hpp"
#include "maprelay/crypto/merkle.hpp"

namespace maprelay::chain {

struct ValidatorSpec {
  std::string seed;  // key derivation seed
  std::uint64_t weight = 1;
};

enum class RotationKind { kIdentity, kSeededShuffle, kStakeDecay };

std::string_view to_string(RotationKind k);
RotationKind parse_rotation(std::string_view s);

struct RotationPolicy {
  RotationKind kind = RotationKind::kIdentity;
  // seeded-shuffle: candidates beyond the initial set, drawn from
  // "<chain>-cand-<i>" seeds
  std::uint32_t extra_candidates = 0;
  // stake-decay: each weight loses a pseudo-random share in [0, decay_percent]%
  std::uint32_t decay_percent = 10;
};

struct ChainConfig {
  ChainId chain_id = 0;
  std::uint64_t epoch_size = 10;
  Threshold threshold;
  std::vector<ValidatorSpec> validators;
  std::uint64_t genesis_timestamp = 0;
  HeaderMode mode = HeaderMode::kFullSet;
  RotationPolicy rotation;
  HashAlgo hash = HashAlgo::kSha256;

  // Throws kConfig listing the first violated invariant.
  // Every violated constraint; validate() throws kConfig with the first.
  std::vector<std::string> problems() const;
  void validate() const;
};

struct Confirmation {
  BlockHeader header;
  Digest receipt_root;
  ReceiptMessage receipt;
  crypto::MerkleProof proof;
};

// A simulated PoS-BFT chain. Consensus is a weighted quorum over the header
// signing payload; validators marked as withholding do not sign.
class Chain {
 public:
  explicit Chain(ChainConfig config);

  const ChainConfig& config() const { return config_; }
  ChainId id() const { return config_.chain_id; }
  std::uint64_t height() const { return blocks_.back().header.height; }
  std::uint64_t epoch() const { return blocks_.back().header.epoch; }
  const Block& block(std::uint64_t height) const;
  const Block& head() const { return blocks_.back(); }
  const crypto::ValidatorSet& validator_set(std::uint64_t epoch) const;
  const crypto::ValidatorSet& current_set() const { return validator_set(epoch()); }
  // Set that will sign the next block.
  const crypto::ValidatorSet& next_signing_set() const;

  // Queues ctx for the next non-transition block. Throws when dest == this chain.
  Digest submit_tx(const CrossChainTx& ctx);
  // Queues an arbitrary receipt event under a caller-chosen key (used by the
  // relay chain for intermediate records).
  Digest submit_event(const Digest& key, Bytes event);
  std::size_t pending() const { return pending_.size(); }

  // Produces the next block at logical time now, or returns nullopt when the
  // available signing weight is below threshold (block withheld).
  std::optional<Block> produce_block(std::uint64_t now);
  std::uint64_t withheld_count() const { return withheld_; }

  // Throws kNotFound for unknown or not yet included hashes.
  Confirmation confirm(const Digest& tx_hash) const;
  bool is_included(const Digest& tx_hash) const { return locations_.count(tx_hash) != 0; }

  crypto::ValidatorSet rotate_validators(std::uint64_t epoch) const;

  void set_withholding(std::set<Bytes> pk_bytes) { withholding_ = std::move(pk_bytes); }
  const std::set<Bytes>& withholding() const { return withholding_; }

  // Aggregate signature over payload by the bit-set members of vs. Models
  // validators (honest or colluding) signing with their own keys.
  AggregateSignature sign_with(const crypto::ValidatorSet& vs, const crypto::Bitmap& signers,
                               ByteView payload) const;
  // Secret lookup for key material this chain generated.
  const crypto::Fr& secret_of(const Bytes& pk_bytes) const;

 private:
  struct Location {
    std::uint64_t height;
    std::size_t index;
  };

  Block build_block(std::uint64_t height, std::uint64_t now, std::vector<Digest> txs,
                    std::vector<ReceiptMessage> receipts, const crypto::ValidatorSet& carried,
                    const Digest& parent);
  crypto::ValidatorSet set_from_specs(std::uint64_t epoch,
                                      const std::vector<ValidatorSpec>& specs) const;
  void ensure_key(const std::string& seed) const;

  ChainConfig config_;
  std::vector<Block> blocks_;
  std::map<std::uint64_t, crypto::ValidatorSet> sets_;
  struct Pending {
    Digest key;
    Bytes event;
  };
  std::deque<Pending> pending_;
  std::map<Digest, Location> locations_;
  std::set<Bytes> withholding_;
  std::uint64_t withheld_ = 0;
  std::vector<ValidatorSpec> candidates_;
  mutable std::map<std::string, crypto::KeyPair> keys_by_seed_;
  mutable std::map<Bytes, crypto::Fr> secrets_;
};

}  // namespace maprelay::chain
