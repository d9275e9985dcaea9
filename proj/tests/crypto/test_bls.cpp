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

#include <set>
#include <string>

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/bls.hpp"
#include "maprelay/crypto/validator_set.hpp"

namespace maprelay::crypto {
namespace {

TEST(Keygen, Deterministic) {
  KeyPair a = keygen("v0"), b = keygen("v0");
  EXPECT_EQ(a.public_key, b.public_key);
  EXPECT_EQ(a.secret, b.secret);
  EXPECT_EQ(a.public_key, G2::generator() * a.secret);
  EXPECT_THROW(keygen(""), Error);
}

TEST(Keygen, ThousandSeedsDistinct) {
  std::set<Bytes> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(compress(keygen("v" + std::to_string(i)).public_key));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Bls, SignVerify) {
  KeyPair k = keygen("alice");
  Bytes m = {1, 2, 3};
  G1 sig = sign(k.secret, m);
  EXPECT_TRUE(verify_single(k.public_key, m, sig));
  EXPECT_FALSE(verify_single(keygen("bob").public_key, m, sig));
  EXPECT_THROW(sign(k.secret, Bytes{}), Error);
}

TEST(Bls, SingleBitFlipsRejected) {
  KeyPair k = keygen("flip");
  Bytes m(13);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint8_t>(i * 37);
  G1 sig = sign(k.secret, m);
  for (int bit = 0; bit < 100; ++bit) {
    Bytes m2 = m;
    m2[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(verify_single(k.public_key, m2, sig)) << bit;
  }
}

TEST(Bls, AggregateIdentityAndCorrectness) {
  std::vector<KeyPair> ks;
  std::vector<std::pair<G2, std::uint64_t>> members;
  for (int i = 0; i < 4; ++i) {
    ks.push_back(keygen("agg" + std::to_string(i)));
    members.emplace_back(ks.back().public_key, 1);
  }
  ValidatorSet vs = ValidatorSet::make(0, members);
  Bytes m = {9, 9, 9};
  auto sig_of = [&](std::size_t idx) {
    for (const auto& k : ks) {
      if (compress(k.public_key) == vs.entries()[idx].pk_bytes) return sign(k.secret, m);
    }
    return G1::infinity();
  };
  G1 s0 = sig_of(0);
  EXPECT_EQ(aggregate({s0}), s0);
  Bitmap one = {true, false, false, false};
  EXPECT_EQ(aggregate_pubkeys(vs, one), vs.entries()[0].pk);

  std::vector<G1> all;
  for (std::size_t i = 0; i < 4; ++i) all.push_back(sig_of(i));
  EXPECT_TRUE(verify_aggregate(aggregate_pubkeys(vs, Bitmap(4, true)), m, aggregate(all)));

  // three good signatures plus one over a different message
  std::vector<G1> mixed(all.begin(), all.begin() + 3);
  mixed.push_back(sign(ks[0].secret, Bytes{7}));
  EXPECT_FALSE(verify_aggregate(aggregate_pubkeys(vs, Bitmap(4, true)), m, aggregate(mixed)));

  EXPECT_FALSE(verify_aggregate(aggregate_pubkeys(vs, Bitmap(4, false)), m, aggregate(all)));
  EXPECT_THROW(aggregate_pubkeys(vs, Bitmap(3, true)), Error);
  EXPECT_THROW(aggregate({}), Error);
}

// Every bitmap over 5 validators: the exact signer set verifies, a set
// missing one bit-set signer or carrying one extra signer does not.
TEST(Bls, ExhaustiveBitmapsAtFive) {
  constexpr int n = 5;
  std::vector<KeyPair> ks;
  std::vector<std::pair<G2, std::uint64_t>> members;
  for (int i = 0; i < n; ++i) {
    ks.push_back(keygen("ex" + std::to_string(i)));
    members.emplace_back(ks.back().public_key, 10 + i);
  }
  ValidatorSet vs = ValidatorSet::make(0, members);
  std::vector<Fr> sk(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& k : ks) {
      if (compress(k.public_key) == vs.entries()[i].pk_bytes) sk[i] = k.secret;
    }
  }
  Bytes m = {4, 2};
  std::vector<G1> sigs;
  for (int i = 0; i < n; ++i) sigs.push_back(sign(sk[i], m));

  for (int mask = 1; mask < (1 << n); ++mask) {
    Bitmap bm(n);
    std::vector<G1> exact;
    for (int i = 0; i < n; ++i) {
      bm[i] = (mask >> i) & 1;
      if (bm[i]) exact.push_back(sigs[i]);
    }
    G2 apk = aggregate_pubkeys(vs, bm);
    EXPECT_TRUE(verify_aggregate(apk, m, aggregate(exact))) << mask;
    for (int i = 0; i < n; ++i) {
      std::vector<G1> other;
      int flip_mask = mask ^ (1 << i);
      for (int j = 0; j < n; ++j) {
        if ((flip_mask >> j) & 1) other.push_back(sigs[j]);
      }
      if (other.empty()) continue;
      EXPECT_FALSE(verify_aggregate(apk, m, aggregate(other))) << mask << " flip " << i;
    }
  }
  EXPECT_FALSE(verify_aggregate(aggregate_pubkeys(vs, Bitmap(n, false)), m, sigs[0]));
}

TEST(Bls, VerifyWithBaseMatchesMessageRoute) {
  KeyPair k = keygen("base");
  Bytes m = {5, 5};
  G1 sig = sign(k.secret, m);
  EXPECT_TRUE(verify_with_base(k.public_key, hash_to_base(m), sig));
  EXPECT_FALSE(verify_with_base(k.public_key, hash_to_base(Bytes{5}), sig));
}

}  // namespace
}  // namespace maprelay::crypto
