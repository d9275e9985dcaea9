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
#include <utility>
#include <vector>

#include "maprelay/common/hash.hpp"
#include "maprelay/crypto/curve.hpp"

namespace maprelay::crypto {

using Bitmap = std::vector<bool>;

struct ValidatorEntry {
  G2 pk;
  Bytes pk_bytes;  // compressed, also the canonical sort key
  std::uint64_t weight = 0;
};

// Weighted public keys of one epoch, kept in canonical order (ascending by
// compressed public key). Bitmaps index this order.
class ValidatorSet {
 public:
  ValidatorSet() = default;

  // Sorts canonically. Throws on an empty input or a repeated key.
  static ValidatorSet make(std::uint64_t epoch, std::vector<std::pair<G2, std::uint64_t>> members);

  std::uint64_t epoch() const { return epoch_; }
  const std::vector<ValidatorEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint64_t total_weight() const { return total_; }

  // Throws kBitmapMismatch when the length differs from size().
  std::uint64_t weight_of(const Bitmap& bitmap) const;
  // Index of a compressed key, or -1.
  long index_of(ByteView pk_bytes) const;

  ValidatorSet with_epoch(std::uint64_t epoch) const;

  Bytes serialize() const;
  static ValidatorSet deserialize(ByteView data);

  bool operator==(const ValidatorSet& o) const;

 private:
  std::uint64_t epoch_ = 0;
  std::vector<ValidatorEntry> entries_;
  std::uint64_t total_ = 0;
};

// Sum of the bit-set public keys. Throws kBitmapMismatch on length mismatch.
// An all-zero bitmap yields the identity.
G2 aggregate_pubkeys(const ValidatorSet& vs, const Bitmap& bitmap);

struct ValidatorSetCommitment {
  Digest digest;
  std::uint64_t epoch = 0;
  bool operator==(const ValidatorSetCommitment&) const = default;
};

// Hash over the length-prefixed canonical (pk, weight) sequence. The epoch
// travels next to the digest and is not hashed into it. Throws on an empty
// set.
ValidatorSetCommitment commit_validator_set(const ValidatorSet& vs,
                                            HashAlgo algo = HashAlgo::kSha256);

Bytes encode_bitmap(const Bitmap& b);
Bitmap decode_bitmap(Reader& r);

}  // namespace maprelay::crypto
