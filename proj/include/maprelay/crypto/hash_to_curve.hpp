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

#include <string_view>

#include "maprelay/common/bytes.hpp"
#include "maprelay/crypto/curve.hpp"

namespace maprelay::crypto {

inline constexpr std::string_view kDefaultDst = "MAPRELAY-V01-CS01-with-BN254G1_XMD:SHA-256_SVDW_RO_";

// expand_message_xmd with SHA-256 (RFC 9380, 5.3.1).
Bytes expand_message_xmd(ByteView msg, ByteView dst, std::size_t len_in_bytes);

// The pair of base-field elements a hybrid light client computes on chain.
struct BaseFieldPair {
  Fp t0, t1;
  bool operator==(const BaseFieldPair&) const = default;

  Bytes to_bytes() const;  // 64 bytes, t0 then t1, big-endian
  static BaseFieldPair from_bytes(ByteView b);  // strict
};

BaseFieldPair hash_to_base(ByteView msg, std::string_view dst = kDefaultDst);

// Shallue-van de Woestijne map for y^2 = x^3 + 3 (Z = 1).
G1 map_to_curve_svdw(const Fp& u);

// map(t0) + map(t1). G1 has cofactor 1, so no clearing step.
G1 base_to_g(const BaseFieldPair& t);

// Monolithic hash-to-curve, computed end to end on the independent reference
// arithmetic. Equals base_to_g(hash_to_base(msg)).
G1 hash_to_curve(ByteView msg, std::string_view dst = kDefaultDst);

}  // namespace maprelay::crypto
