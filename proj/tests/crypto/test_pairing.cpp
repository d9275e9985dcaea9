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

#include "maprelay/crypto/bls.hpp"
#include "maprelay/crypto/pairing.hpp"
#include "maprelay/crypto/reference.hpp"

namespace maprelay::crypto {
namespace {

Fr scalar(std::uint64_t v) { return Fr::from_u64(v); }

TEST(Curve, GeneratorsOnCurveAndOrder) {
  EXPECT_TRUE(G1::generator().is_on_curve());
  EXPECT_TRUE(G2::generator().is_on_curve());
  EXPECT_TRUE(G1::generator().in_subgroup());
  EXPECT_TRUE(G2::generator().in_subgroup());
}

TEST(Curve, GroupLaw) {
  G1 g = G1::generator();
  EXPECT_EQ(g + g, g.dbl());
  EXPECT_EQ(g * scalar(5), g + g + g + g + g);
  EXPECT_TRUE((g - g).is_infinity());
  G2 h = G2::generator();
  EXPECT_EQ(h * scalar(3), h + h.dbl());
  EXPECT_EQ((h * scalar(7)) + (h * scalar(11)), h * scalar(18));
}

TEST(Curve, MatchesReferenceArithmetic) {
  G1 g = G1::generator() * scalar(123456789);
  reference::P1 rg = reference::mul(reference::from_fast(G1::generator()), 123456789);
  EXPECT_EQ(reference::from_fast(g), rg);
  G2 h = G2::generator() * scalar(987654321);
  reference::P2 rh = reference::mul(reference::from_fast(G2::generator()), 987654321);
  EXPECT_EQ(reference::from_fast(h), rh);
}

TEST(Curve, CompressionRoundTrip) {
  for (std::uint64_t k = 1; k < 20; ++k) {
    G1 a = G1::generator() * scalar(k * 7919);
    auto da = decompress_g1(compress(a));
    ASSERT_TRUE(da.has_value());
    EXPECT_EQ(*da, a);
    G2 b = G2::generator() * scalar(k * 104729);
    auto db = decompress_g2(compress(b));
    ASSERT_TRUE(db.has_value());
    EXPECT_EQ(*db, b);
  }
  auto inf = decompress_g1(compress(G1::infinity()));
  ASSERT_TRUE(inf.has_value());
  EXPECT_TRUE(inf->is_infinity());
  Bytes bad(32, 0xff);
  EXPECT_FALSE(decompress_g1(bad).has_value());
  EXPECT_FALSE(decompress_g2(Bytes(63, 0)).has_value());
}

TEST(Curve, DecompressRejectsNonSubgroupG2) {
  // Find some x on the twist whose point is outside the order-r subgroup.
  int found = 0;
  for (std::uint64_t x = 1; x < 50 && found < 3; ++x) {
    Fp2 fx = Fp2::from_u64(x, 1);
    Fp2 y;
    if (!sqrt(fx.square() * fx + G2Curve::b(), y)) continue;
    G2 pt(fx, y);
    ASSERT_TRUE(pt.is_on_curve());
    EXPECT_FALSE(pt.in_subgroup());
    EXPECT_FALSE(decompress_g2(compress(pt)).has_value());
    ++found;
  }
  EXPECT_GT(found, 0);
}

TEST(Pairing, FastFinalExponentiationMatchesNaive) {
  for (std::uint64_t k : {1ULL, 2ULL, 99991ULL}) {
    G1 p = G1::generator() * scalar(k);
    G2 q = G2::generator() * scalar(k + 17);
    Fp12 f = miller_loop({{p.to_affine(), q.to_affine()}});
    EXPECT_EQ(final_exponentiation(f), final_exponentiation_naive(f));
  }
}

TEST(Pairing, NonDegenerateAndOrderR) {
  Fp12 e = pairing(G1::generator(), G2::generator());
  EXPECT_FALSE(e.is_one());
  EXPECT_TRUE(e.pow(FrParams::kModulus).is_one());
}

TEST(Pairing, Bilinear) {
  Fp12 e = pairing(G1::generator(), G2::generator());
  Fr a = scalar(123456789), b = scalar(987654321);
  Fp12 lhs = pairing(G1::generator() * a, G2::generator() * b);
  EXPECT_EQ(lhs, e.pow((a * b).canonical()));
  EXPECT_EQ(pairing(G1::generator() * a, G2::generator()),
            pairing(G1::generator(), G2::generator() * a));
  G1 p1 = G1::generator() * scalar(3), p2 = G1::generator() * scalar(5);
  G2 q = G2::generator() * scalar(11);
  EXPECT_EQ(pairing(p1 + p2, q), pairing(p1, q) * pairing(p2, q));
}

TEST(Pairing, FastMatchesReferenceRoute) {
  for (std::uint64_t k : {1ULL, 42ULL, 1000003ULL}) {
    G1 p = G1::generator() * scalar(k);
    G2 q = G2::generator() * scalar(3 * k + 1);
    Fp12 fast = pairing(p, q);
    reference::Poly12 slow = reference::pairing(reference::from_fast(p), reference::from_fast(q));
    EXPECT_EQ(reference::to_tower(slow), fast);
  }
}

TEST(Pairing, CheckProducts) {
  G1 p = G1::generator() * scalar(77);
  G2 q = G2::generator() * scalar(55);
  EXPECT_TRUE(pairing_check({{p, q}, {-p, q}}));
  EXPECT_TRUE(pairing_check({{p * scalar(2), q}, {-p, q * scalar(2)}}));
  EXPECT_FALSE(pairing_check({{p, q}, {p, q}}));
  EXPECT_TRUE(pairing_check({{G1::infinity(), q}}));
  EXPECT_TRUE(reference::pairing_check({{reference::from_fast(p), reference::from_fast(q)},
                                        {reference::from_fast(-p), reference::from_fast(q)}}));
  EXPECT_FALSE(reference::pairing_check({{reference::from_fast(p), reference::from_fast(q)}}));
}

}  // namespace
}  // namespace maprelay::crypto
