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

#include <cstdint>

namespace maprelay::crypto {

// Per-thread tallies of the primitives the gas meter prices. Light clients
// read deltas of these to cross-check their receipts.
struct OpCounters {
  std::uint64_t pairing_checks = 0;
  std::uint64_t pairing_pairs = 0;
  std::uint64_t g1_adds = 0;
  std::uint64_t g2_adds = 0;
  std::uint64_t hash_to_base = 0;
  std::uint64_t base_to_g = 0;
  std::uint64_t merkle_levels = 0;
  std::uint64_t commitments = 0;
};

OpCounters& op_counters();

inline OpCounters counters_delta(const OpCounters& before, const OpCounters& after) {
  return {after.pairing_checks - before.pairing_checks,
          after.pairing_pairs - before.pairing_pairs,
          after.g1_adds - before.g1_adds,
          after.g2_adds - before.g2_adds,
          after.hash_to_base - before.hash_to_base,
          after.base_to_g - before.base_to_g,
          after.merkle_levels - before.merkle_levels,
          after.commitments - before.commitments};
}

}  // namespace maprelay::crypto
