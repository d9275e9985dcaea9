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

#include <string>
#include <vector>

#include "maprelay/chain/chain.hpp"

namespace maprelay::testing {

inline chain::ChainConfig chain_config(chain::ChainId id, std::size_t n, std::uint64_t epoch_size = 10,
                                       chain::HeaderMode mode = chain::HeaderMode::kFullSet) {
  chain::ChainConfig cfg;
  cfg.chain_id = id;
  cfg.epoch_size = epoch_size;
  cfg.mode = mode;
  for (std::size_t i = 0; i < n; ++i) {
    cfg.validators.push_back({"c" + std::to_string(id) + "-v" + std::to_string(i), 10});
  }
  return cfg;
}

inline chain::CrossChainTx asset_tx(chain::ChainId from, chain::ChainId to, std::uint64_t nonce,
                                    std::uint64_t amount = 100, std::string token = "USDC") {
  chain::CrossChainTx tx;
  tx.origin_chain = from;
  tx.dest_chain = to;
  tx.nonce = nonce;
  tx.payload = chain::AssetPayload{std::move(token), amount, "transfer"};
  return tx;
}

inline crypto::Bitmap bits(std::initializer_list<int> v) {
  crypto::Bitmap b;
  for (int x : v) b.push_back(x != 0);
  return b;
}

}  // namespace maprelay::testing
