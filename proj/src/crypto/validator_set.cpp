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

#include "maprelay/crypto/validator_set.hpp"

#include <algorithm>

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/counters.hpp"

namespace maprelay::crypto {

ValidatorSet ValidatorSet::make(std::uint64_t epoch,
                                std::vector<std::pair<G2, std::uint64_t>> members) {
  MAPRELAY_ENFORCE(!members.empty(), ErrorCode::kInvalidArgument, "empty validator set");
  ValidatorSet vs;
  vs.epoch_ = epoch;
  vs.entries_.reserve(members.size());
  for (auto& [pk, w] : members) {
    MAPRELAY_ENFORCE(!pk.is_infinity(), ErrorCode::kInvalidArgument,
                     "validator key is the identity");
    vs.entries_.push_back({pk, compress(pk), w});
  }
  std::sort(vs.entries_.begin(), vs.entries_.end(),
            [](const auto& a, const auto& b) { return a.pk_bytes < b.pk_bytes; });
  for (std::size_t i = 0; i < vs.entries_.size(); ++i) {
    if (i > 0) {
      MAPRELAY_ENFORCE(vs.entries_[i - 1].pk_bytes != vs.entries_[i].pk_bytes,
                       ErrorCode::kDuplicate, "repeated validator key");
    }
    MAPRELAY_ENFORCE(vs.total_ + vs.entries_[i].weight >= vs.total_,
                     ErrorCode::kInvalidArgument, "total weight overflow");
    vs.total_ += vs.entries_[i].weight;
  }
  return vs;
}

std::uint64_t ValidatorSet::weight_of(const Bitmap& bitmap) const {
  MAPRELAY_ENFORCE(bitmap.size() == entries_.size(), ErrorCode::kBitmapMismatch,
                   "bitmap length does not match validator set");
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < bitmap.size(); ++i) {
    if (bitmap[i]) w += entries_[i].weight;
  }
  return w;
}

long ValidatorSet::index_of(ByteView pk_bytes) const {
  Bytes key(pk_bytes.begin(), pk_bytes.end());
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const auto& e, const Bytes& k) { return e.pk_bytes < k; });
  if (it == entries_.end() || it->pk_bytes != key) return -1;
  return it - entries_.begin();
}

ValidatorSet ValidatorSet::with_epoch(std::uint64_t epoch) const {
  ValidatorSet vs = *this;
  vs.epoch_ = epoch;
  return vs;
}

Bytes ValidatorSet::serialize() const {
  Writer w;
  w.u64(epoch_).u32(static_cast<std::uint32_t>(entries_.size()));
  for (const auto& e : entries_) w.raw(e.pk_bytes).u64(e.weight);
  return std::move(w).take();
}

ValidatorSet ValidatorSet::deserialize(ByteView data) {
  Reader r(data);
  std::uint64_t epoch = r.u64();
  std::uint32_t n = r.u32();
  MAPRELAY_ENFORCE(n > 0 && n <= data.size() / (kG2CompressedSize + 8), ErrorCode::kDecode,
                   "bad validator count");
  std::vector<std::pair<G2, std::uint64_t>> members;
  members.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto pk = decompress_g2(r.raw(kG2CompressedSize));
    MAPRELAY_ENFORCE(pk.has_value(), ErrorCode::kDecode, "bad validator key");
    members.emplace_back(*pk, r.u64());
  }
  r.finish();
  return make(epoch, std::move(members));
}

bool ValidatorSet::operator==(const ValidatorSet& o) const {
  if (epoch_ != o.epoch_ || entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].pk_bytes != o.entries_[i].pk_bytes ||
        entries_[i].weight != o.entries_[i].weight) {
      return false;
    }
  }
  return true;
}

G2 aggregate_pubkeys(const ValidatorSet& vs, const Bitmap& bitmap) {
  MAPRELAY_ENFORCE(bitmap.size() == vs.size(), ErrorCode::kBitmapMismatch,
                   "bitmap length does not match validator set");
  G2 acc = G2::infinity();
  bool first = true;
  for (std::size_t i = 0; i < bitmap.size(); ++i) {
    if (!bitmap[i]) continue;
    if (first) {
      acc = vs.entries()[i].pk;
      first = false;
    } else {
      acc += vs.entries()[i].pk;
      op_counters().g2_adds += 1;
    }
  }
  return acc;
}

ValidatorSetCommitment commit_validator_set(const ValidatorSet& vs, HashAlgo algo) {
  MAPRELAY_ENFORCE(!vs.empty(), ErrorCode::kInvalidArgument, "cannot commit an empty set");
  op_counters().commitments += 1;
  Hasher h(algo);
  Writer w;
  w.str("maprelay/validator-set/v1").u32(static_cast<std::uint32_t>(vs.size()));
  h.update(w.bytes());
  for (const auto& e : vs.entries()) {
    Writer ew;
    ew.var_bytes(e.pk_bytes).u64(e.weight);
    h.update(ew.bytes());
  }
  return {h.finalize(), vs.epoch()};
}

Bytes encode_bitmap(const Bitmap& b) {
  Writer w;
  w.u32(static_cast<std::uint32_t>(b.size()));
  Bytes packed((b.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) packed[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  w.raw(packed);
  return std::move(w).take();
}

Bitmap decode_bitmap(Reader& r) {
  std::uint32_t n = r.u32();
  ByteView packed = r.raw((static_cast<std::size_t>(n) + 7) / 8);
  Bitmap b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = packed[i / 8] & (0x80 >> (i % 8));
  if (n % 8 != 0) {
    std::uint8_t pad_mask = static_cast<std::uint8_t>(0xff >> (n % 8));
    MAPRELAY_ENFORCE((packed.back() & pad_mask) == 0, ErrorCode::kDecode,
                     "nonzero bitmap padding");
  }
  return b;
}

}  // namespace maprelay::crypto
