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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maprelay/relay/network.hpp"

namespace maprelay::mos {

// F(amount) in integer minor units. k is the fraction k_num / k_den.
struct PricingConfig {
  std::uint64_t k_num = 25;
  std::uint64_t k_den = 1000;
  std::uint64_t f_rc = 1;   // base fee on the relay chain
  std::uint64_t f_dc = 1;   // base fee on the destination
  std::uint64_t f_max = 1000;

  void validate() const;  // throws kConfig
  nlohmann::json to_json() const;
  static PricingConfig from_json(const nlohmann::json& j);
};

// f_rc + f_dc while k*amount stays at or below it, k*amount (rounded half
// up) up to f_max, f_max beyond.
std::uint64_t compute_fee(std::uint64_t amount, const PricingConfig& cfg);

enum class Status : std::uint8_t {
  kPendingSc,
  kConfirmedSc,
  kConfirmedRc,
  kConfirmedDc,
  kRejected,
};
std::string_view to_string(Status s);
Status parse_status(std::string_view s);

struct MessageRecord {
  chain::CtxKey key;
  chain::ChainId to_chain = 0;
  Status status = Status::kPendingSc;
  std::string reason;  // set with kRejected
  std::uint64_t fee = 0;
  std::string fee_token;
  std::map<Status, std::uint64_t> times;  // logical time each status was reached
  // Rejected deliveries seen for this key. They never move the status back.
  std::vector<std::string> rejections;
};

// The record store, persisted as an append-only JSON-lines journal. Each
// line is one change; replaying the journal rebuilds the store.
class RecordStore {
 public:
  void create(const MessageRecord& r, std::uint64_t time);
  // Moves forward only; older or equal statuses are ignored. Returns whether
  // the status changed.
  bool advance(const chain::CtxKey& k, Status s, std::uint64_t time);
  void note_rejection(const chain::CtxKey& k, std::string reason, std::uint64_t time);
  const MessageRecord* find(const chain::CtxKey& k) const;
  const std::map<chain::CtxKey, MessageRecord>& records() const { return records_; }

  const std::vector<std::string>& journal() const { return journal_; }
  std::string journal_text() const;
  // Throws kDecode with the offending line number.
  static RecordStore replay(const std::string& jsonl);

 private:
  void append(nlohmann::json j);
  void apply(const nlohmann::json& j);
  std::map<chain::CtxKey, MessageRecord> records_;
  std::vector<std::string> journal_;
};

// A receipt proof as handed to message_in: header, receipt, Merkle path,
// zk proof.
struct ReceiptProofBundle {
  chain::BlockHeader header;
  chain::ReceiptMessage receipt;
  crypto::MerkleProof mkl;
  prover::ZkProof zk;

  Bytes serialize() const;
  static ReceiptProofBundle deserialize(ByteView data);
};

// Application-facing service over a relay network. Statuses follow the
// network's trace; message_in lets an application push a bundle directly.
class Service {
 public:
  Service(relay::Network& net, PricingConfig pricing);

  // Aliased dataOut in the original interface. Throws kInvalidArgument when
  // to_chain == from, kUnknownTarget for an unconnected destination and
  // kInsufficientFee when fee_paid < compute_fee.
  chain::CtxKey message_out(chain::ChainId from, chain::ChainId to_chain, chain::Payload data,
                            std::uint64_t fee_paid, std::string fee_token = "native");

  struct InResult {
    Status status = Status::kRejected;
    std::string reason;
    Digest converted;  // key of the converted (intermediate or final) record
    bool duplicate = false;
  };
  // Aliased dataIn. Runs the light client hosted on `chain` for a bundle
  // from from_chain.
  InResult message_in(chain::ChainId chain, chain::ChainId from_chain, ByteView receipt_proof);

  // Throws kNotFound.
  MessageRecord inquire(const chain::CtxKey& k) const;
  const RecordStore& store() const { return store_; }
  const PricingConfig& pricing() const { return pricing_; }

 private:
  void on_event(const relay::TraceEvent& e);
  relay::Network& net_;
  PricingConfig pricing_;
  RecordStore store_;
};

}  // namespace maprelay::mos
