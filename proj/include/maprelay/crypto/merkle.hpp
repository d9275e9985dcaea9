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
#include <vector>

#include "maprelay/common/hash.hpp"

namespace maprelay::crypto {

// Binary Merkle tree. Leaves hash as H(0x00 || leaf), inner nodes as
// H(0x01 || left || right). An unpaired node at the end of a level moves up
// unchanged. The root of zero leaves is H("").

enum class Side : std::uint8_t { kLeft = 0, kRight = 1 };

struct MerkleStep {
  Digest sibling;
  Side side;  // where the sibling sits
  bool operator==(const MerkleStep&) const = default;
};

struct MerkleProof {
  Bytes leaf;
  std::uint32_t index = 0;
  std::uint32_t leaf_count = 0;
  std::vector<MerkleStep> path;
  Digest root;

  Bytes serialize() const;
  static MerkleProof deserialize(ByteView data);
  bool operator==(const MerkleProof&) const = default;
};

Digest merkle_leaf_hash(ByteView leaf, HashAlgo algo = HashAlgo::kSha256);
Digest merkle_node_hash(const Digest& l, const Digest& r, HashAlgo algo = HashAlgo::kSha256);

Digest merkle_root(const std::vector<Bytes>& leaves, HashAlgo algo = HashAlgo::kSha256);

// Throws kInvalidArgument when index >= leaves.size().
MerkleProof merkle_prove(const std::vector<Bytes>& leaves, std::size_t index,
                         HashAlgo algo = HashAlgo::kSha256);

// Proofs for every leaf from a single tree build.
std::vector<MerkleProof> merkle_prove_all(const std::vector<Bytes>& leaves,
                                          HashAlgo algo = HashAlgo::kSha256);
// Checks the path shape against (index, leaf_count), that proof.leaf == leaf and
// proof.root == root, and recomputes the root.
bool merkle_verify(const Digest& root, ByteView leaf, const MerkleProof& proof,
                   HashAlgo algo = HashAlgo::kSha256);

}  // namespace maprelay::crypto
