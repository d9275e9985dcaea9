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

#include <gmpxx.h>

#include <array>
#include <utility>
#include <vector>

#include "maprelay/common/bytes.hpp"
#include "maprelay/crypto/curve.hpp"

// Slow, straightforward BN254 arithmetic on GMP integers. It shares no field
// or tower code with the fast path: Fp12 is the flat polynomial ring
// Fp[w] / (w^12 - 18 w^6 + 82), points are affine, and the final
// exponentiation uses the plain hard-part exponent. Used as a test oracle and
// as the evaluation route of the counting proof backend.
namespace maprelay::crypto::reference {

using Z = mpz_class;

const Z& p();
const Z& r();

struct F2 {
  Z a, b;  // a + b i
  bool operator==(const F2&) const = default;
};

struct P1 {
  Z x, y;
  bool inf = true;
  bool operator==(const P1&) const = default;
};

struct P2 {
  F2 x, y;
  bool inf = true;
  bool operator==(const P2&) const = default;
};

struct Poly12 {
  std::array<Z, 12> c;
  bool operator==(const Poly12&) const = default;
  bool is_one() const;
};

P1 from_fast(const G1& p);
G1 to_fast(const P1& p);
P2 from_fast(const G2& p);
G2 to_fast(const P2& p);
Z from_fast(const Fp& a);

// Reads the tower coefficients into the polynomial basis.
Poly12 from_tower(const Fp12& f);
Fp12 to_tower(const Poly12& f);
Poly12 mul(const Poly12& a, const Poly12& b);

P1 add(const P1& a, const P1& b);
P2 add(const P2& a, const P2& b);
P1 mul(const P1& a, const Z& k);
P2 mul(const P2& a, const Z& k);
bool on_curve(const P1& a);
bool on_curve(const P2& a);

Bytes expand_message_xmd(ByteView msg, ByteView dst, std::size_t len);
std::pair<Z, Z> hash_to_field(ByteView msg, ByteView dst);
P1 map_to_curve(const Z& u);
P1 base_to_g(const Z& t0, const Z& t1);
P1 hash_to_curve(ByteView msg, ByteView dst);

Poly12 miller_loop(const P1& p, const P2& q);
Poly12 final_exponentiation(const Poly12& f);
Poly12 pairing(const P1& p, const P2& q);
bool pairing_check(const std::vector<std::pair<P1, P2>>& pairs);

}  // namespace maprelay::crypto::reference
