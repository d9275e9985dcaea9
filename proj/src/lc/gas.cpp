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

#include "maprelay/lc/gas.hpp"

namespace maprelay::lc {

#define MAPRELAY_GAS_FIELDS(X)                                                             \
  X(storage_write_word) X(storage_read_word) X(hash) X(pairing_base) X(pairing_per_pair)   \
  X(g1_add) X(g1_mul) X(g2_add) X(field_exp) X(snark_verify_fixed) X(snark_public_input) \
  X(merkle_level) X(validator_entry_words) X(commitment_record_words) X(lc_state_words)

nlohmann::json GasCostTable::to_json() const {
  nlohmann::json j;
#define X(f) j[#f] = f;
  MAPRELAY_GAS_FIELDS(X)
#undef X
  return j;
}

GasCostTable GasCostTable::from_json(const nlohmann::json& j) {
  GasCostTable t;
#define X(f) \
  if (j.contains(#f)) t.f = j.at(#f).get<std::uint64_t>();
  MAPRELAY_GAS_FIELDS(X)
#undef X
  return t;
}

std::uint64_t GasReceipt::count_of(const std::string& name) const {
  std::uint64_t n = 0;
  for (const auto& i : items) {
    if (i.name == name) n += i.count;
  }
  return n;
}

std::uint64_t GasReceipt::cost_of(const std::string& name) const {
  std::uint64_t n = 0;
  for (const auto& i : items) {
    if (i.name == name) n += i.cost;
  }
  return n;
}

nlohmann::json GasReceipt::to_json() const {
  nlohmann::json items_j = nlohmann::json::array();
  for (const auto& i : items) {
    items_j.push_back({{"name", i.name}, {"count", i.count}, {"unit", i.unit}, {"cost", i.cost}});
  }
  return {{"op", op}, {"items", items_j}, {"total", total}};
}

void GasMeter::charge(const std::string& name, std::uint64_t count, std::uint64_t unit) {
  if (count == 0) return;
  for (auto& i : receipt_.items) {
    if (i.name == name && i.unit == unit) {
      i.count += count;
      i.cost += count * unit;
      receipt_.total += count * unit;
      return;
    }
  }
  receipt_.items.push_back({name, count, unit, count * unit});
  receipt_.total += count * unit;
}

}  // namespace maprelay::lc
