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

#include "maprelay/crypto/curve.hpp"

namespace maprelay::crypto {

namespace {

Fp2 fp2_dec(const char* a, const char* b) {
  return {Fp::from_decimal(a), Fp::from_decimal(b)};
}

constexpr std::uint8_t kInfinityFlag = 0x80;
constexpr std::uint8_t kSignFlag = 0x40;

}  // namespace

const Fp2& G2Curve::b() {
  static const Fp2 v = Fp2::from_u64(3) * Fp2::from_u64(9, 1).inverse();
  return v;
}

const Fp2& G2Curve::gen_x() {
  static const Fp2 v = fp2_dec(
      "10857046999023057135944570762232829481370756359578518086990519993285655852781",
      "11559732032986387107991004021392285783925812861821192530917403151452391805634");
  return v;
}

const Fp2& G2Curve::gen_y() {
  static const Fp2 v = fp2_dec(
      "8495653923123431417604973247489272438418190587263600148770280649306958101930",
      "4082367875863433681332203403145435568316851327593401208105741076214120093531");
  return v;
}

bool sgn0(const Fp2& a) {
  bool s0 = a.c0.sgn0();
  bool z0 = a.c0.is_zero();
  bool s1 = a.c1.sgn0();
  return s0 || (z0 && s1);
}

Bytes compress(const G1& p) {
  Bytes out(kG1CompressedSize, 0);
  if (p.is_infinity()) {
    out[0] = kInfinityFlag;
    return out;
  }
  G1Affine a = p.to_affine();
  a.x.to_be_bytes(out.data());
  if (a.y.sgn0()) out[0] |= kSignFlag;
  return out;
}

Bytes compress(const G2& p) {
  Bytes out(kG2CompressedSize, 0);
  if (p.is_infinity()) {
    out[0] = kInfinityFlag;
    return out;
  }
  G2Affine a = p.to_affine();
  a.x.c1.to_be_bytes(out.data());
  a.x.c0.to_be_bytes(out.data() + 32);
  if (sgn0(a.y)) out[0] |= kSignFlag;
  return out;
}

std::optional<G1> decompress_g1(ByteView data) {
  if (data.size() != kG1CompressedSize) return std::nullopt;
  std::uint8_t flags = data[0] & 0xc0;
  Bytes body(data.begin(), data.end());
  body[0] &= 0x3f;
  if (flags & kInfinityFlag) {
    if (flags & kSignFlag) return std::nullopt;
    for (auto b : body) {
      if (b != 0) return std::nullopt;
    }
    return G1::infinity();
  }
  Fp x;
  if (!Fp::from_be_bytes_strict(body, x)) return std::nullopt;
  Fp y;
  if (!sqrt(x.square() * x + G1Curve::b(), y)) return std::nullopt;
  if (y.sgn0() != static_cast<bool>(flags & kSignFlag)) y = -y;
  return G1(x, y);
}

std::optional<G2> decompress_g2(ByteView data) {
  if (data.size() != kG2CompressedSize) return std::nullopt;
  std::uint8_t flags = data[0] & 0xc0;
  Bytes body(data.begin(), data.end());
  body[0] &= 0x3f;
  if (flags & kInfinityFlag) {
    if (flags & kSignFlag) return std::nullopt;
    for (auto b : body) {
      if (b != 0) return std::nullopt;
    }
    return G2::infinity();
  }
  Fp2 x;
  if (!Fp::from_be_bytes_strict(ByteView(body).subspan(0, 32), x.c1)) return std::nullopt;
  if (!Fp::from_be_bytes_strict(ByteView(body).subspan(32, 32), x.c0)) return std::nullopt;
  Fp2 y;
  if (!sqrt(x.square() * x + G2Curve::b(), y)) return std::nullopt;
  if (sgn0(y) != static_cast<bool>(flags & kSignFlag)) y = -y;
  G2 p(x, y);
  if (!p.in_subgroup()) return std::nullopt;
  return p;
}

}  // namespace maprelay::crypto
