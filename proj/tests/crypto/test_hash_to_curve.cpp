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

#include <random>
#include <set>
#include <string>

#include "maprelay/crypto/hash_to_curve.hpp"
#include "maprelay/crypto/reference.hpp"

namespace maprelay::crypto {
namespace {

constexpr std::string_view kQuuxDst = "QUUX-V01-CS02-with-expander-SHA256-128";

TEST(ExpandMessage, Rfc9380Vectors) {
  EXPECT_EQ(to_hex(expand_message_xmd(as_bytes(""), as_bytes(kQuuxDst), 0x20)),
            "68a985b87eb6b46952128911f2a4412bbc302a9d759667f87f7a21d803f07235");
  EXPECT_EQ(to_hex(expand_message_xmd(as_bytes("abc"), as_bytes(kQuuxDst), 0x20)),
            "d8ccab23b5985ccea865c6c97b6e5b8350e794e603b4b97902f53a8a0d605615");
  EXPECT_EQ(to_hex(expand_message_xmd(as_bytes("abcdef0123456789"), as_bytes(kQuuxDst), 0x20)),
            "eff31487c770a893cfb36f912fbfcbff40d5661771ca4b2cb4eafe524333f5c1");
  EXPECT_EQ(to_hex(expand_message_xmd(as_bytes(""), as_bytes(kQuuxDst), 0x80)),
            "af84c27ccfd45d41914fdff5df25293e221afc53d8ad2ac06d5e3e29485dadbe"
            "e0d121587713a3e0dd4d5e69e93eb7cd4f5df4cd103e188cf60cb02edc3edf18"
            "eda8576c412b18ffb658e3dd6ec849469b979d444cf7b26911a08e63cf31f9dc"
            "c541708d3491184472c2c29bb749d4286b004ceb5ee6b9a7fa5b646c993f0ced");
}

TEST(ExpandMessage, ReferenceRouteAgrees) {
  for (std::size_t len : {1u, 32u, 48u, 96u, 200u}) {
    EXPECT_EQ(expand_message_xmd(as_bytes("m"), as_bytes(kDefaultDst), len),
              reference::expand_message_xmd(as_bytes("m"), as_bytes(kDefaultDst), len));
  }
}

TEST(HashToBase, DeterministicAndReduced) {
  BaseFieldPair a = hash_to_base(as_bytes("header"));
  EXPECT_EQ(a, hash_to_base(as_bytes("header")));
  BaseFieldPair e = hash_to_base(as_bytes(""));
  EXPECT_NE(e, a);
  // canonical form survives a strict round trip
  EXPECT_EQ(BaseFieldPair::from_bytes(a.to_bytes()), a);
}

TEST(HashToBase, GoldenVector) {
  BaseFieldPair t = hash_to_base(as_bytes("abc"));
  EXPECT_EQ(t.t0.to_decimal(),
            "8456579646847770306031613916914839012213766861328167451703246706510712345342");
  EXPECT_EQ(t.t1.to_decimal(),
            "10214402267971537799200270872640645959023778791072043111469595262610073247030");
}

TEST(HashToBase, OneByteChangesGiveDistinctPairs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Bytes m(1 + rng() % 64);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng());
    Bytes m2 = m;
    m2[rng() % m2.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    EXPECT_NE(hash_to_base(m), hash_to_base(m2));
  }
}

TEST(BaseToG, GoldenVectors) {
  G1Affine h = base_to_g(hash_to_base(as_bytes("abc"))).to_affine();
  EXPECT_EQ(h.x.to_decimal(),
            "2824746153715341638579550231641866199742660592277692546910981777687342585761");
  EXPECT_EQ(h.y.to_decimal(),
            "16738494210415515433849912201889340370877985595262269998116454451532461108413");
  G1Affine b = base_to_g({Fp::from_u64(1), Fp::from_u64(2)}).to_affine();
  EXPECT_EQ(b.x.to_decimal(),
            "20882060995943117179196276527482009472107189219786956782909359158055213597934");
  EXPECT_EQ(b.y.to_decimal(),
            "14674149783344589008492148554174017924012232445984946386160457961453886559070");
  // u = 0 exercises the inv0 branch.
  G1Affine z = map_to_curve_svdw(Fp::zero()).to_affine();
  EXPECT_EQ(z.x.to_decimal(),
            "10944121435919637611123202872628637544348155578648911831344518947322613104291");
}

TEST(BaseToG, RandomInputsLandInSubgroup) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    Limbs a{rng(), rng(), rng(), rng() >> 3}, b{rng(), rng(), rng(), rng() >> 3};
    G1 pt = base_to_g({Fp::from_limbs_reduce(a), Fp::from_limbs_reduce(b)});
    ASSERT_TRUE(pt.is_on_curve());
    // cofactor 1: on-curve already implies the subgroup, check it anyway
    if (i < 20) {
      EXPECT_TRUE(pt.in_subgroup());
    }
  }
}

TEST(HashToCurve, SplitPipelineIdentity) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Bytes m(rng() % 80);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng());
    ASSERT_EQ(base_to_g(hash_to_base(m)), hash_to_curve(m)) << to_hex(m);
  }
}

}  // namespace
}  // namespace maprelay::crypto
