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

#include "maprelay/crypto/pairing.hpp"
#include "maprelay/crypto/reference.hpp"
#include "maprelay/crypto/tower.hpp"

namespace maprelay::crypto {
namespace {

using reference::Z;

Limbs random_limbs(std::mt19937_64& rng, const Limbs& mod) {
  Limbs a{rng(), rng(), rng(), rng() >> 2};
  while (limbs::geq(a, mod)) limbs::sub_inplace(a, mod);
  return a;
}

Z to_z(const Limbs& a) { return Z(limbs::to_decimal(a)); }

TEST(Field, MulAddSubMatchGmp) {
  std::mt19937_64 rng(1);
  const Z p = reference::p();
  for (int i = 0; i < 2000; ++i) {
    Limbs a = random_limbs(rng, FpParams::kModulus);
    Limbs b = random_limbs(rng, FpParams::kModulus);
    Fp fa = Fp::from_canonical(a), fb = Fp::from_canonical(b);
    Z za = to_z(a), zb = to_z(b);
    EXPECT_EQ(to_z((fa * fb).canonical()), Z((za * zb) % p));
    EXPECT_EQ(to_z((fa + fb).canonical()), Z((za + zb) % p));
    EXPECT_EQ(to_z((fa - fb).canonical()), Z(((za - zb) % p + p) % p));
  }
}

TEST(Field, ScalarFieldMatchesGmp) {
  std::mt19937_64 rng(2);
  const Z r = reference::r();
  for (int i = 0; i < 500; ++i) {
    Limbs a = random_limbs(rng, FrParams::kModulus);
    Limbs b = random_limbs(rng, FrParams::kModulus);
    Fr fa = Fr::from_canonical(a), fb = Fr::from_canonical(b);
    EXPECT_EQ(to_z((fa * fb).canonical()), Z((to_z(a) * to_z(b)) % r));
  }
}

TEST(Field, InverseAndEdgeValues) {
  Fp pm1 = -Fp::one();
  EXPECT_EQ(pm1 * pm1, Fp::one());
  EXPECT_TRUE((Fp::one() - Fp::one()).is_zero());
  EXPECT_TRUE(Fp::zero().inverse().is_zero());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Fp a = Fp::from_canonical(random_limbs(rng, FpParams::kModulus));
    if (a.is_zero()) continue;
    EXPECT_EQ(a * a.inverse(), Fp::one());
  }
}

TEST(Field, ReduceFromBytesMatchesGmp) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    Bytes b(48);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    Z z;
    mpz_import(z.get_mpz_t(), b.size(), 1, 1, 0, 0, b.data());
    EXPECT_EQ(reference::from_fast(Fp::from_be_bytes_reduce(b)), Z(z % reference::p()));
  }
}

TEST(Field, StrictDecodeRejectsNonCanonical) {
  Bytes b(32);
  limbs::to_be_bytes(FpParams::kModulus, b.data());
  Fp out;
  EXPECT_FALSE(Fp::from_be_bytes_strict(b, out));
  b[31] -= 1;
  EXPECT_TRUE(Fp::from_be_bytes_strict(b, out));
  EXPECT_EQ(out, -Fp::one());
}

TEST(Field, SquareRoots) {
  std::mt19937_64 rng(5);
  int squares = 0;
  for (int i = 0; i < 200; ++i) {
    Fp a = Fp::from_canonical(random_limbs(rng, FpParams::kModulus));
    Fp s;
    bool ok = sqrt(a, s);
    EXPECT_EQ(ok, a.legendre() >= 0);
    if (ok) {
      EXPECT_EQ(s.square(), a);
      ++squares;
    }
    Fp s2;
    ASSERT_TRUE(sqrt(a.square(), s2));
    EXPECT_TRUE(s2 == a || s2 == -a);
  }
  EXPECT_GT(squares, 50);
}

TEST(Field, Fp2SquareRootAndInverse) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    Fp2 a{Fp::from_canonical(random_limbs(rng, FpParams::kModulus)),
          Fp::from_canonical(random_limbs(rng, FpParams::kModulus))};
    EXPECT_EQ(a * a.inverse(), Fp2::one());
    Fp2 s;
    ASSERT_TRUE(sqrt(a.square(), s));
    EXPECT_EQ(s.square(), a.square());
    EXPECT_EQ(a.square(), a * a);
  }
}

TEST(Field, TowerInverses) {
  std::mt19937_64 rng(7);
  auto rnd2 = [&] {
    return Fp2{Fp::from_canonical(random_limbs(rng, FpParams::kModulus)),
               Fp::from_canonical(random_limbs(rng, FpParams::kModulus))};
  };
  for (int i = 0; i < 20; ++i) {
    Fp12 f{{rnd2(), rnd2(), rnd2()}, {rnd2(), rnd2(), rnd2()}};
    EXPECT_TRUE((f * f.inverse()).is_one());
    EXPECT_EQ(f.square(), f * f);
    Fp2 a = rnd2(), b = rnd2(), c = rnd2();
    Fp12 line{{a, Fp2::zero(), Fp2::zero()}, {b, c, Fp2::zero()}};
    EXPECT_EQ(f.mul_by_line(a, b, c), f * line);
  }
}

TEST(Field, TowerMatchesPolynomialRing) {
  // The tower and the flat polynomial ring are isomorphic; products must
  // agree under the basis change.
  std::mt19937_64 rng(8);
  auto rnd2 = [&] {
    return Fp2{Fp::from_canonical(random_limbs(rng, FpParams::kModulus)),
               Fp::from_canonical(random_limbs(rng, FpParams::kModulus))};
  };
  for (int i = 0; i < 10; ++i) {
    Fp12 f{{rnd2(), rnd2(), rnd2()}, {rnd2(), rnd2(), rnd2()}};
    Fp12 g{{rnd2(), rnd2(), rnd2()}, {rnd2(), rnd2(), rnd2()}};
    EXPECT_EQ(reference::to_tower(reference::from_tower(f)), f);
    EXPECT_EQ(reference::to_tower(reference::final_exponentiation(reference::from_tower(f))),
              final_exponentiation(f));
    EXPECT_EQ(reference::to_tower(
                  reference::mul(reference::from_tower(f), reference::from_tower(g))),
              f * g);
  }
}

}  // namespace
}  // namespace maprelay::crypto
