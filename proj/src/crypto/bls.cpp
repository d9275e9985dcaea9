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

#include "maprelay/crypto/bls.hpp"

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/counters.hpp"
#include "maprelay/crypto/pairing.hpp"

namespace maprelay::crypto {

namespace {
constexpr std::string_view kKeygenDst = "MAPRELAY-V01-KEYGEN";
}

KeyPair keygen(std::string_view seed) {
  MAPRELAY_ENFORCE(!seed.empty(), ErrorCode::kInvalidArgument, "keygen seed must be nonempty");
  for (std::uint8_t ctr = 0;; ++ctr) {
    Bytes in(seed.begin(), seed.end());
    in.push_back(ctr);
    Bytes okm = expand_message_xmd(in, as_bytes(kKeygenDst), 48);
    Fr sk = Fr::from_be_bytes_reduce(okm);
    if (!sk.is_zero()) return {sk, G2::generator() * sk};
  }
}

G1 sign(const Fr& sk, ByteView msg) {
  MAPRELAY_ENFORCE(!msg.empty(), ErrorCode::kInvalidArgument, "cannot sign an empty message");
  return base_to_g(hash_to_base(msg)) * sk;
}

bool verify_single(const G2& pk, ByteView msg, const G1& sig) {
  return verify_aggregate(pk, msg, sig);
}

G1 aggregate(const std::vector<G1>& sigs) {
  MAPRELAY_ENFORCE(!sigs.empty(), ErrorCode::kInvalidArgument, "nothing to aggregate");
  G1 acc = sigs.front();
  for (std::size_t i = 1; i < sigs.size(); ++i) {
    acc += sigs[i];
    op_counters().g1_adds += 1;
  }
  return acc;
}

bool verify_with_base(const G2& apk, const BaseFieldPair& t, const G1& sig) {
  if (apk.is_infinity() || sig.is_infinity()) return false;
  G1 h = base_to_g(t);
  return pairing_check({{sig, G2::generator()}, {h, -apk}});
}

bool verify_aggregate(const G2& apk, ByteView msg, const G1& sig) {
  return verify_with_base(apk, hash_to_base(msg), sig);
}

}  // namespace maprelay::crypto
