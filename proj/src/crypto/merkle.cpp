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

#include "maprelay/crypto/merkle.hpp"

#include <algorithm>

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/counters.hpp"

namespace maprelay::crypto {

Digest merkle_leaf_hash(ByteView leaf, HashAlgo algo) {
  std::uint8_t tag = 0x00;
  Hasher h(algo);
  h.update(ByteView(&tag, 1)).update(leaf);
  return h.finalize();
}

Digest merkle_node_hash(const Digest& l, const Digest& r, HashAlgo algo) {
  std::uint8_t tag = 0x01;
  Hasher h(algo);
  h.update(ByteView(&tag, 1)).update(l).update(r);
  return h.finalize();
}

namespace {

std::vector<Digest> next_level(const std::vector<Digest>& level, HashAlgo algo) {
  std::vector<Digest> up;
  up.reserve((level.size() + 1) / 2);
  for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
    up.push_back(merkle_node_hash(level[i], level[i + 1], algo));
  }
  if (level.size() % 2 == 1) up.push_back(level.back());
  return up;
}

std::vector<Digest> leaf_level(const std::vector<Bytes>& leaves, HashAlgo algo) {
  std::vector<Digest> level;
  level.reserve(leaves.size());
  for (const auto& l : leaves) level.push_back(merkle_leaf_hash(l, algo));
  return level;
}

}  // namespace

Digest merkle_root(const std::vector<Bytes>& leaves, HashAlgo algo) {
  if (leaves.empty()) return hash(ByteView{}, algo);
  std::vector<Digest> level = leaf_level(leaves, algo);
  while (level.size() > 1) level = next_level(level, algo);
  return level.front();
}

MerkleProof merkle_prove(const std::vector<Bytes>& leaves, std::size_t index, HashAlgo algo) {
  MAPRELAY_ENFORCE(index < leaves.size(), ErrorCode::kInvalidArgument,
                   "merkle index out of range");
  MerkleProof proof;
  proof.leaf = leaves[index];
  proof.index = static_cast<std::uint32_t>(index);
  proof.leaf_count = static_cast<std::uint32_t>(leaves.size());
  std::vector<Digest> level = leaf_level(leaves, algo);
  std::size_t pos = index;
  while (level.size() > 1) {
    bool promoted = (pos == level.size() - 1) && (level.size() % 2 == 1);
    if (!promoted) {
      if (pos % 2 == 0) {
        proof.path.push_back({level[pos + 1], Side::kRight});
      } else {
        proof.path.push_back({level[pos - 1], Side::kLeft});
      }
    }
    level = next_level(level, algo);
    pos /= 2;
  }
  proof.root = level.front();
  return proof;
}

std::vector<MerkleProof> merkle_prove_all(const std::vector<Bytes>& leaves, HashAlgo algo) {
  std::vector<MerkleProof> out(leaves.size());
  if (leaves.empty()) return out;
  std::vector<std::vector<Digest>> levels{leaf_level(leaves, algo)};
  while (levels.back().size() > 1) levels.push_back(next_level(levels.back(), algo));
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    MerkleProof& proof = out[i];
    proof.leaf = leaves[i];
    proof.index = static_cast<std::uint32_t>(i);
    proof.leaf_count = static_cast<std::uint32_t>(leaves.size());
    std::size_t pos = i;
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
      const auto& level = levels[l];
      bool promoted = (pos == level.size() - 1) && (level.size() % 2 == 1);
      if (!promoted) {
        if (pos % 2 == 0) {
          proof.path.push_back({level[pos + 1], Side::kRight});
        } else {
          proof.path.push_back({level[pos - 1], Side::kLeft});
        }
      }
      pos /= 2;
    }
    proof.root = levels.back().front();
  }
  return out;
}

bool merkle_verify(const Digest& root, ByteView leaf, const MerkleProof& proof, HashAlgo algo) {
  if (proof.root != root) return false;
  if (!std::equal(leaf.begin(), leaf.end(), proof.leaf.begin(), proof.leaf.end())) return false;
  if (proof.leaf_count == 0 || proof.index >= proof.leaf_count) return false;
  // Replay the tree shape to pin down the expected sides.
  std::size_t pos = proof.index;
  std::size_t width = proof.leaf_count;
  std::size_t step = 0;
  Digest acc = merkle_leaf_hash(leaf, algo);
  while (width > 1) {
    bool promoted = (pos == width - 1) && (width % 2 == 1);
    if (!promoted) {
      if (step >= proof.path.size()) return false;
      const MerkleStep& s = proof.path[step++];
      Side expected = (pos % 2 == 0) ? Side::kRight : Side::kLeft;
      if (s.side != expected) return false;
      acc = expected == Side::kRight ? merkle_node_hash(acc, s.sibling, algo)
                                     : merkle_node_hash(s.sibling, acc, algo);
      op_counters().merkle_levels += 1;
    }
    pos /= 2;
    width = (width + 1) / 2;
  }
  return step == proof.path.size() && acc == root;
}

Bytes MerkleProof::serialize() const {
  Writer w;
  w.var_bytes(leaf).u32(index).u32(leaf_count).u32(static_cast<std::uint32_t>(path.size()));
  for (const auto& s : path) w.digest(s.sibling).u8(static_cast<std::uint8_t>(s.side));
  w.digest(root);
  return std::move(w).take();
}

MerkleProof MerkleProof::deserialize(ByteView data) {
  Reader r(data);
  MerkleProof p;
  p.leaf = r.var_bytes();
  p.index = r.u32();
  p.leaf_count = r.u32();
  std::uint32_t n = r.u32();
  MAPRELAY_ENFORCE(n <= 64, ErrorCode::kDecode, "merkle path too long");
  for (std::uint32_t i = 0; i < n; ++i) {
    Digest d = r.digest();
    std::uint8_t side = r.u8();
    MAPRELAY_ENFORCE(side <= 1, ErrorCode::kDecode, "bad merkle side");
    p.path.push_back({d, static_cast<Side>(side)});
  }
  p.root = r.digest();
  r.finish();
  return p;
}

}  // namespace maprelay::crypto
