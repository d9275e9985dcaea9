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
#include <string>
#include <vector>

#include "json.hpp"

namespace maprelay::lc {

// Per-primitive gas prices. Defaults are calibrated so that one validator
// entry costs 1e5 to store, a full on-chain BLS receipt check at 100
// validators costs about 1e6, and the proof-based check about 0.65e6.
struct GasCostTable {
  std::uint64_t storage_write_word = 20000;
  std::uint64_t storage_read_word = 800;
  std::uint64_t hash = 60;
  std::uint64_t pairing_base = 34000;
  std::uint64_t pairing_per_pair = 45000;
  std::uint64_t g1_add = 150;
  std::uint64_t g1_mul = 6000;
  std::uint64_t g2_add = 3700;
  std::uint64_t field_exp = 1500;
  std::uint64_t snark_verify_fixed = 500000;
  std::uint64_t snark_public_input = 6150;
  std::uint64_t merkle_level = 25000;
  // storage layout
  std::uint64_t validator_entry_words = 5;    // pk (4 words) + weight
  std::uint64_t commitment_record_words = 5;  // digest, epoch, E, T, chain id
  std::uint64_t lc_state_words = 1;           // epoch counter read per call

  nlohmann::json to_json() const;
  static GasCostTable from_json(const nlohmann::json& j);  // missing keys keep defaults
};

struct GasItem {
  std::string name;
  std::uint64_t count = 0;
  std::uint64_t unit = 0;
  std::uint64_t cost = 0;
};

struct GasReceipt {
  std::string op;
  std::vector<GasItem> items;
  std::uint64_t total = 0;

  std::uint64_t count_of(const std::string& name) const;
  std::uint64_t cost_of(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Accumulates itemized charges. Item names are fixed strings listed below.
class GasMeter {
 public:
  GasMeter(const GasCostTable& table, std::string op) : table_(table) { receipt_.op = std::move(op); }

  void storage_write(std::uint64_t words) { charge("storage_write", words, table_.storage_write_word); }
  void storage_read(std::uint64_t words) { charge("storage_read", words, table_.storage_read_word); }
  void hash(std::uint64_t n = 1) { charge("hash", n, table_.hash); }
  void pairing_check(std::uint64_t pairs) {
    charge("pairing_check", 1, table_.pairing_base);
    charge("pairing_pair", pairs, table_.pairing_per_pair);
  }
  void g1_add(std::uint64_t n) { charge("g1_add", n, table_.g1_add); }
  void g1_mul(std::uint64_t n) { charge("g1_mul", n, table_.g1_mul); }
  void g2_add(std::uint64_t n) { charge("g2_add", n, table_.g2_add); }
  void field_exp(std::uint64_t n) { charge("field_exp", n, table_.field_exp); }
  void snark_verify(std::uint64_t public_inputs) {
    charge("snark_verify", 1, table_.snark_verify_fixed);
    charge("snark_public_input", public_inputs, table_.snark_public_input);
  }
  void merkle_levels(std::uint64_t n) { charge("merkle_level", n, table_.merkle_level); }

  const GasCostTable& table() const { return table_; }
  const GasReceipt& receipt() const { return receipt_; }
  GasReceipt take() { return std::move(receipt_); }

 private:
  void charge(const std::string& name, std::uint64_t count, std::uint64_t unit);

  const GasCostTable& table_;
  GasReceipt receipt_;
};

// Hash invocations inside hash_to_base (expand_message_xmd for 96 bytes:
// b_0 plus three output blocks).
inline constexpr std::uint64_t kHashToBaseHashes = 4;
// Field exponentiations in base_to_g: per SVDW map one inversion, up to two
// square tests and one square root.
inline constexpr std::uint64_t kBaseToGFieldExps = 8;

}  // namespace maprelay::lc
