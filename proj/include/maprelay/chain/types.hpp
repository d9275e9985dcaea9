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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maprelay/common/hash.hpp"
#include "maprelay/crypto/curve.hpp"
#include "maprelay/crypto/validator_set.hpp"

namespace maprelay::chain {

using ChainId = std::uint64_t;

// Vote threshold as an exact fraction num/den of total weight.
struct Threshold {
  std::uint64_t num = 2;
  std::uint64_t den = 3;

  bool met(std::uint64_t weight, std::uint64_t total) const {
    return static_cast<unsigned __int128>(weight) * den >=
           static_cast<unsigned __int128>(num) * total;
  }
  bool valid() const { return den > 0 && 2 * num >= den && num <= den; }
  bool operator==(const Threshold&) const = default;
};

struct AssetPayload {
  std::string token;
  std::uint64_t amount = 0;
  std::string instruction;
  bool operator==(const AssetPayload&) const = default;
};

struct MessagePayload {
  Bytes call;
  bool operator==(const MessagePayload&) const = default;
};

using Payload = std::variant<AssetPayload, MessagePayload>;

// ctx = {DC, payload} plus origin metadata.
struct CrossChainTx {
  ChainId origin_chain = 0;
  ChainId dest_chain = 0;
  std::uint64_t nonce = 0;
  Payload payload;

  Bytes payload_bytes() const;
  Bytes serialize() const;
  static CrossChainTx deserialize(ByteView data);
  Digest hash(HashAlgo algo = HashAlgo::kSha256) const;
  bool operator==(const CrossChainTx&) const = default;
};

// Global identity of a ctx across hops.
struct CtxKey {
  ChainId origin_chain = 0;
  std::uint64_t nonce = 0;
  auto operator<=>(const CtxKey&) const = default;
  std::string str() const;
};

inline CtxKey key_of(const CrossChainTx& tx) { return {tx.origin_chain, tx.nonce}; }

struct ReceiptMessage {
  Digest tx_hash;
  Bytes event;  // serialized event payload
  std::uint64_t height = 0;

  // The receipt-trie leaf encoding.
  Bytes serialize() const;
  static ReceiptMessage deserialize(ByteView data);
  bool operator==(const ReceiptMessage&) const = default;
};

enum class HeaderMode : std::uint8_t { kFullSet = 1, kCommitted = 2 };

struct AggregateSignature {
  crypto::G1 point;
  crypto::Bitmap bitmap;
};

// Heights kE (k >= 1) are epoch transitions: they carry epoch k, are signed by
// the epoch k-1 set and announce the epoch k set. Other heights are signed by
// the set of their own epoch. The carried validator info always describes
// the set of header.epoch.
struct BlockHeader {
  ChainId chain_id = 0;
  std::uint64_t height = 0;
  std::uint64_t epoch = 0;
  std::uint64_t epoch_size = 1;
  std::uint64_t timestamp = 0;
  Digest parent;
  Digest receipt_root;
  HeaderMode mode = HeaderMode::kFullSet;
  std::optional<crypto::ValidatorSet> validators;            // full mode
  std::optional<crypto::ValidatorSetCommitment> commitment;  // committed mode
  AggregateSignature signature;

  bool is_transition() const { return height > 0 && height % epoch_size == 0; }
  // Epoch of the set that signs this header.
  std::uint64_t signing_epoch() const { return is_transition() ? epoch - 1 : epoch; }

  // Everything except the signature and bitmap. This is the BLS message.
  Bytes signing_payload() const;
  Digest signing_digest(HashAlgo algo = HashAlgo::kSha256) const;
  Bytes serialize() const;
  static BlockHeader deserialize(ByteView data);
  Digest hash(HashAlgo algo = HashAlgo::kSha256) const;
};

struct Block {
  BlockHeader header;
  std::vector<Digest> tx_hashes;
  std::vector<ReceiptMessage> receipts;  // leaf i belongs to tx i
};

}  // namespace maprelay::chain
