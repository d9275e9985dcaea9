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
#include <vector>

#include "maprelay/crypto/curve.hpp"
#include "maprelay/crypto/hash_to_curve.hpp"

namespace maprelay::crypto {

// Signatures live in G1, public keys in G2.
struct KeyPair {
  Fr secret;
  G2 public_key;
};

// Deterministic key derivation from a seed. Throws on an empty seed.
KeyPair keygen(std::string_view seed);

// Throws on an empty message.
G1 sign(const Fr& sk, ByteView msg);

bool verify_single(const G2& pk, ByteView msg, const G1& sig);

// Throws on an empty list.
G1 aggregate(const std::vector<G1>& sigs);

// e(sig, g2) == e(H(msg), apk). Rejects the identity for apk or sig.
bool verify_aggregate(const G2& apk, ByteView msg, const G1& sig);

// Same check with the hash already split out: H(msg) = base_to_g(t).
bool verify_with_base(const G2& apk, const BaseFieldPair& t, const G1& sig);

}  // namespace maprelay::crypto
