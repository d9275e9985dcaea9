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

#include "maprelay/crypto/hash_to_curve.hpp"


#include "maprelay/common/error.hpp"
#include "maprelay/common/hash.hpp"
#include "maprelay/crypto/counters.hpp"
#include "maprelay/crypto/reference.hpp"

namespace maprelay::crypto {

namespace {

constexpr std::size_t kL = 48;

struct SvdwConstants {
  Fp c1, c2, c3, c4;
};

const SvdwConstants& svdw() {
  static const SvdwConstants k{
      Fp::from_u64(4),
      Fp::from_decimal(
          "10944121435919637611123202872628637544348155578648911831344518947322613104291"),
      Fp::from_decimal("8815841940592487685674414971303048083897117035520822607866"),
      Fp::from_decimal(
          "7296080957279758407415468581752425029565437052432607887563012631548408736189")};
  return k;
}

Fp g(const Fp& x) { return x.square() * x + Fp::from_u64(3); }

}  // namespace

Bytes expand_message_xmd(ByteView msg, ByteView dst, std::size_t len_in_bytes) {
  constexpr std::size_t kB = 32;
  constexpr std::size_t kR = 64;
  std::size_t ell = (len_in_bytes + kB - 1) / kB;
  MAPRELAY_ENFORCE(ell <= 255 && len_in_bytes <= 65535 && dst.size() <= 255,
                   ErrorCode::kInvalidArgument, "expand_message_xmd bounds");
  Bytes dst_prime(dst.begin(), dst.end());
  dst_prime.push_back(static_cast<std::uint8_t>(dst.size()));

  Hasher h0;
  Bytes z_pad(kR, 0);
  std::uint8_t lib[3] = {static_cast<std::uint8_t>(len_in_bytes >> 8),
                         static_cast<std::uint8_t>(len_in_bytes), 0};
  h0.update(z_pad).update(msg).update(ByteView(lib, 3)).update(dst_prime);
  Digest b0 = h0.finalize();

  Bytes out;
  out.reserve(ell * kB);
  Digest prev;
  for (std::size_t i = 1; i <= ell; ++i) {
    Digest x = b0;
    if (i > 1) {
      for (std::size_t j = 0; j < kB; ++j) x.bytes[j] ^= prev.bytes[j];
    }
    std::uint8_t idx = static_cast<std::uint8_t>(i);
    Hasher hi;
    hi.update(x).update(ByteView(&idx, 1)).update(dst_prime);
    prev = hi.finalize();
    out.insert(out.end(), prev.bytes.begin(), prev.bytes.end());
  }
  out.resize(len_in_bytes);
  return out;
}

Bytes BaseFieldPair::to_bytes() const {
  Bytes out(64);
  t0.to_be_bytes(out.data());
  t1.to_be_bytes(out.data() + 32);
  return out;
}

BaseFieldPair BaseFieldPair::from_bytes(ByteView b) {
  BaseFieldPair t;
  MAPRELAY_ENFORCE(b.size() == 64 && Fp::from_be_bytes_strict(b.subspan(0, 32), t.t0) &&
                       Fp::from_be_bytes_strict(b.subspan(32, 32), t.t1),
                   ErrorCode::kDecode, "bad base field pair");
  return t;
}

BaseFieldPair hash_to_base(ByteView msg, std::string_view dst) {
  op_counters().hash_to_base += 1;
  Bytes u = expand_message_xmd(msg, as_bytes(dst), 2 * kL);
  return {Fp::from_be_bytes_reduce(ByteView(u).subspan(0, kL)),
          Fp::from_be_bytes_reduce(ByteView(u).subspan(kL, kL))};
}

G1 map_to_curve_svdw(const Fp& u) {
  const auto& k = svdw();
  Fp tv1 = u.square() * k.c1;
  Fp tv2 = Fp::one() + tv1;
  tv1 = Fp::one() - tv1;
  Fp tv3 = (tv1 * tv2).inverse();  // inv0
  Fp tv4 = u * tv1 * tv3 * k.c3;
  Fp x1 = k.c2 - tv4;
  bool e1 = g(x1).legendre() >= 0;
  Fp x2 = k.c2 + tv4;
  bool e2 = !e1 && g(x2).legendre() >= 0;
  Fp x3 = (tv2.square() * tv3).square() * k.c4 + Fp::one();
  Fp x = x3;
  if (e1) x = x1;
  if (e2) x = x2;
  Fp y;
  bool ok = sqrt(g(x), y);
  MAPRELAY_ENFORCE(ok, ErrorCode::kPrecondition, "svdw produced a non-square");
  if (u.sgn0() != y.sgn0()) y = -y;
  return G1(x, y);
}

G1 base_to_g(const BaseFieldPair& t) {
  op_counters().base_to_g += 1;
  return map_to_curve_svdw(t.t0) + map_to_curve_svdw(t.t1);
}

G1 hash_to_curve(ByteView msg, std::string_view dst) {
  return reference::to_fast(reference::hash_to_curve(msg, as_bytes(dst)));
}

}  // namespace maprelay::crypto
