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

#include <gtest/gtest.h>

#include <string>

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/merkle.hpp"

namespace maprelay::crypto {
namespace {

std::vector<Bytes> make_leaves(int n) {
  std::vector<Bytes> out;
  for (int i = 0; i < n; ++i) {
    std::string s = "leaf-" + std::to_string(i);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

TEST(Merkle, SingleLeaf) {
  auto leaves = make_leaves(1);
  Digest root = merkle_root(leaves);
  EXPECT_EQ(root, merkle_leaf_hash(leaves[0]));
  MerkleProof p = merkle_prove(leaves, 0);
  EXPECT_TRUE(p.path.empty());
  EXPECT_TRUE(merkle_verify(root, leaves[0], p));
}

TEST(Merkle, EmptyRootAndRangeCheck) {
  EXPECT_EQ(merkle_root({}), hash(ByteView{}));
  EXPECT_THROW(merkle_prove(make_leaves(3), 3), Error);
}

TEST(Merkle, AllIndicesVerifyAtVariousSizes) {
  for (int n = 1; n <= 13; ++n) {
    auto leaves = make_leaves(n);
    Digest root = merkle_root(leaves);
    for (int i = 0; i < n; ++i) {
      MerkleProof p = merkle_prove(leaves, i);
      EXPECT_TRUE(merkle_verify(root, leaves[i], p)) << n << "/" << i;
      EXPECT_EQ(MerkleProof::deserialize(p.serialize()), p);
    }
  }
}

TEST(Merkle, ProveAllMatchesSingleProofs) {
  EXPECT_TRUE(merkle_prove_all({}).empty());
  for (int n = 1; n <= 21; ++n) {
    auto leaves = make_leaves(n);
    auto all = merkle_prove_all(leaves);
    ASSERT_EQ(all.size(), leaves.size());
    for (int i = 0; i < n; ++i) EXPECT_EQ(all[i], merkle_prove(leaves, i)) << n << "/" << i;
  }
}

// Exhaustive at 8 leaves: each proof verifies only for its own triple, and
// perturbing any single node on the path breaks it.
TEST(Merkle, SoundnessExhaustiveAtEight) {
  auto leaves = make_leaves(8);
  Digest root = merkle_root(leaves);
  for (int i = 0; i < 8; ++i) {
    MerkleProof p = merkle_prove(leaves, i);
    ASSERT_EQ(p.path.size(), 3u);
    for (int j = 0; j < 8; ++j) {
      EXPECT_EQ(merkle_verify(root, leaves[j], p), i == j);
      MerkleProof moved = p;
      moved.index = j;
      EXPECT_EQ(merkle_verify(root, leaves[i], moved), i == j);
    }
    for (std::size_t k = 0; k < p.path.size(); ++k) {
      for (int byte : {0, 17, 31}) {
        MerkleProof bad = p;
        bad.path[k].sibling.bytes[byte] ^= 1;
        EXPECT_FALSE(merkle_verify(root, leaves[i], bad));
      }
      MerkleProof flipped = p;
      flipped.path[k].side = flipped.path[k].side == Side::kLeft ? Side::kRight : Side::kLeft;
      EXPECT_FALSE(merkle_verify(root, leaves[i], flipped));
    }
    Digest other_root = root;
    other_root.bytes[0] ^= 1;
    MerkleProof rerooted = p;
    rerooted.root = other_root;
    EXPECT_FALSE(merkle_verify(other_root, leaves[i], rerooted));
    MerkleProof truncated = p;
    truncated.path.pop_back();
    EXPECT_FALSE(merkle_verify(root, leaves[i], truncated));
  }
}

TEST(Merkle, ConfigurableHash) {
  auto leaves = make_leaves(5);
  Digest a = merkle_root(leaves, HashAlgo::kSha256);
  Digest b = merkle_root(leaves, HashAlgo::kKeccak256);
  EXPECT_NE(a, b);
  MerkleProof p = merkle_prove(leaves, 4, HashAlgo::kKeccak256);
  EXPECT_TRUE(merkle_verify(b, leaves[4], p, HashAlgo::kKeccak256));
  EXPECT_FALSE(merkle_verify(b, leaves[4], p, HashAlgo::kSha256));
}

}  // namespace
}  // namespace maprelay::crypto
