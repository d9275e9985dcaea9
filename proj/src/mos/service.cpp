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

#include "maprelay/mos/service.hpp"

#include <sstream>

#include "maprelay/common/error.hpp"

namespace maprelay::mos {

using u128 = unsigned __int128;

void PricingConfig::validate() const {
  MAPRELAY_ENFORCE(k_den > 0 && k_num > 0 && k_num < k_den, ErrorCode::kConfig,
                   "fee coefficient k must lie strictly between 0 and 1");
  MAPRELAY_ENFORCE(f_max >= f_rc + f_dc, ErrorCode::kConfig, "F_max must be >= f_RC + f_DC");
}

nlohmann::json PricingConfig::to_json() const {
  return {{"k_num", k_num}, {"k_den", k_den}, {"f_rc", f_rc}, {"f_dc", f_dc}, {"f_max", f_max}};
}

PricingConfig PricingConfig::from_json(const nlohmann::json& j) {
  PricingConfig c;
  if (j.contains("k_num")) c.k_num = j.at("k_num").get<std::uint64_t>();
  if (j.contains("k_den")) c.k_den = j.at("k_den").get<std::uint64_t>();
  if (j.contains("f_rc")) c.f_rc = j.at("f_rc").get<std::uint64_t>();
  if (j.contains("f_dc")) c.f_dc = j.at("f_dc").get<std::uint64_t>();
  if (j.contains("f_max")) c.f_max = j.at("f_max").get<std::uint64_t>();
  c.validate();
  return c;
}

std::uint64_t compute_fee(std::uint64_t amount, const PricingConfig& cfg) {
  cfg.validate();
  const u128 scaled = static_cast<u128>(amount) * cfg.k_num;  // k*amount*k_den
  const std::uint64_t base = cfg.f_rc + cfg.f_dc;
  if (scaled <= static_cast<u128>(base) * cfg.k_den) return base;
  if (scaled > static_cast<u128>(cfg.f_max) * cfg.k_den) return cfg.f_max;
  u128 rounded = (2 * scaled + cfg.k_den) / (2 * static_cast<u128>(cfg.k_den));
  std::uint64_t fee = static_cast<std::uint64_t>(rounded);
  return std::min(std::max(fee, base), cfg.f_max);
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPendingSc: return "pending-SC";
    case Status::kConfirmedSc: return "confirmed-SC";
    case Status::kConfirmedRc: return "confirmed-RC";
    case Status::kConfirmedDc: return "confirmed-DC";
    case Status::kRejected: return "rejected";
  }
  return "?";
}

Status parse_status(std::string_view s) {
  for (auto st : {Status::kPendingSc, Status::kConfirmedSc, Status::kConfirmedRc,
                  Status::kConfirmedDc, Status::kRejected}) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorCode::kDecode, "unknown status: " + std::string(s));
}

namespace {

nlohmann::json key_json(const chain::CtxKey& k) { return {k.origin_chain, k.nonce}; }

chain::CtxKey key_from(const nlohmann::json& j) {
  return {j.at(0).get<std::uint64_t>(), j.at(1).get<std::uint64_t>()};
}

}  // namespace

void RecordStore::append(nlohmann::json j) {
  j["seq"] = journal_.size();
  journal_.push_back(j.dump());
}

void RecordStore::create(const MessageRecord& r, std::uint64_t time) {
  MAPRELAY_ENFORCE(!records_.count(r.key), ErrorCode::kDuplicate, "record exists: " + r.key.str());
  nlohmann::json j = {{"op", "create"},      {"key", key_json(r.key)},
                      {"to", r.to_chain},    {"status", std::string(to_string(r.status))},
                      {"reason", r.reason},  {"fee", r.fee},
                      {"fee_token", r.fee_token}, {"time", time}};
  apply(j);
  append(std::move(j));
}

bool RecordStore::advance(const chain::CtxKey& k, Status s, std::uint64_t time) {
  auto it = records_.find(k);
  if (it == records_.end()) return false;
  const Status cur = it->second.status;
  if (cur == Status::kRejected || static_cast<int>(s) <= static_cast<int>(cur)) return false;
  nlohmann::json j = {{"op", "status"},
                      {"key", key_json(k)},
                      {"status", std::string(to_string(s))},
                      {"time", time}};
  apply(j);
  append(std::move(j));
  return true;
}

void RecordStore::note_rejection(const chain::CtxKey& k, std::string reason, std::uint64_t time) {
  if (!records_.count(k)) return;
  nlohmann::json j = {{"op", "rejection"}, {"key", key_json(k)}, {"reason", reason}, {"time", time}};
  apply(j);
  append(std::move(j));
}

void RecordStore::apply(const nlohmann::json& j) {
  const std::string op = j.at("op").get<std::string>();
  chain::CtxKey k = key_from(j.at("key"));
  std::uint64_t time = j.at("time").get<std::uint64_t>();
  if (op == "create") {
    MessageRecord r;
    r.key = k;
    r.to_chain = j.at("to").get<std::uint64_t>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.reason = j.at("reason").get<std::string>();
    r.fee = j.at("fee").get<std::uint64_t>();
    r.fee_token = j.at("fee_token").get<std::string>();
    r.times[r.status] = time;
    records_[k] = std::move(r);
  } else if (op == "status") {
    MessageRecord& r = records_.at(k);
    r.status = parse_status(j.at("status").get<std::string>());
    r.times[r.status] = time;
  } else if (op == "rejection") {
    records_.at(k).rejections.push_back(j.at("reason").get<std::string>());
  } else {
    throw Error(ErrorCode::kDecode, "unknown journal op: " + op);
  }
}

const MessageRecord* RecordStore::find(const chain::CtxKey& k) const {
  auto it = records_.find(k);
  return it == records_.end() ? nullptr : &it->second;
}

std::string RecordStore::journal_text() const {
  std::string out;
  for (const auto& l : journal_) {
    out += l;
    out += '\n';
  }
  return out;
}

RecordStore RecordStore::replay(const std::string& jsonl) {
  RecordStore s;
  std::istringstream in(jsonl);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      s.apply(j);
      s.journal_.push_back(line);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kDecode, "journal line " + std::to_string(n) + ": " + e.what());
    }
  }
  return s;
}

Bytes ReceiptProofBundle::serialize() const {
  Writer w;
  w.str("maprelay/bundle/v1");
  w.var_bytes(header.serialize());
  w.var_bytes(receipt.serialize());
  w.var_bytes(mkl.serialize());
  w.var_bytes(zk.serialize());
  return std::move(w).take();
}

ReceiptProofBundle ReceiptProofBundle::deserialize(ByteView data) {
  Reader r(data);
  MAPRELAY_ENFORCE(r.str() == "maprelay/bundle/v1", ErrorCode::kDecode, "not a proof bundle");
  ReceiptProofBundle b;
  b.header = chain::BlockHeader::deserialize(r.var_bytes());
  b.receipt = chain::ReceiptMessage::deserialize(r.var_bytes());
  b.mkl = crypto::MerkleProof::deserialize(r.var_bytes());
  b.zk = prover::ZkProof::deserialize(r.var_bytes());
  r.finish();
  return b;
}

Service::Service(relay::Network& net, PricingConfig pricing) : net_(net), pricing_(pricing) {
  pricing_.validate();
  net_.on_event([this](const relay::TraceEvent& e) { on_event(e); });
}

chain::CtxKey Service::message_out(chain::ChainId from, chain::ChainId to_chain,
                                   chain::Payload data, std::uint64_t fee_paid,
                                   std::string fee_token) {
  MAPRELAY_ENFORCE(from != to_chain, ErrorCode::kInvalidArgument,
                   "destination equals the source chain");
  MAPRELAY_ENFORCE(net_.is_dest(to_chain), ErrorCode::kUnknownTarget,
                   "destination " + std::to_string(to_chain) + " is not connected");
  std::uint64_t amount = 0;
  if (const auto* a = std::get_if<chain::AssetPayload>(&data)) amount = a->amount;
  std::uint64_t fee = compute_fee(amount, pricing_);
  MAPRELAY_ENFORCE(fee_paid >= fee, ErrorCode::kInsufficientFee,
                   "insufficient fee: " + std::to_string(fee_paid) + " < " + std::to_string(fee));
  chain::CrossChainTx ctx{from, to_chain, net_.next_nonce(from), std::move(data)};
  MessageRecord r;
  r.key = chain::key_of(ctx);
  r.to_chain = to_chain;
  r.fee = fee;
  r.fee_token = std::move(fee_token);
  store_.create(r, 4 * net_.now_tick() + 3);
  net_.submit(ctx);
  return r.key;
}

Service::InResult Service::message_in(chain::ChainId chain, chain::ChainId from_chain,
                                      ByteView receipt_proof) {
  InResult out;
  const std::uint64_t t = 4 * net_.now_tick() + 3;
  ReceiptProofBundle b;
  try {
    b = ReceiptProofBundle::deserialize(receipt_proof);
  } catch (const Error& e) {
    out.reason = "malformed";
    return out;
  }
  MAPRELAY_ENFORCE(b.header.chain_id == from_chain, ErrorCode::kInvalidArgument,
                   "bundle header is not from the stated chain");
  relay::Received r;
  chain::CtxKey key;
  Status reached;
  if (chain == net_.rc().id()) {
    chain::CrossChainTx ctx = chain::CrossChainTx::deserialize(b.receipt.event);
    key = chain::key_of(ctx);
    r = net_.rc().relay_receive(ctx, b.header, b.mkl, b.zk);
    out.converted = relay::ictx_key(key, net_.rc().chain().config().hash);
    reached = Status::kConfirmedRc;
  } else {
    relay::IntermediateCtx x = relay::IntermediateCtx::deserialize(b.receipt.event);
    key = x.key();
    r = net_.rc_client(chain).dest_receive(x, b.header, b.mkl, b.zk);
    out.converted = x.ctx.hash(net_.chain(chain).config().hash);
    reached = Status::kConfirmedDc;
  }
  out.duplicate = r.duplicate;
  if (!r.ok()) {
    out.reason = std::string(lc::to_string(r.rejection));
    if (store_.find(key)) {
      store_.note_rejection(key, out.reason, t);
    } else {
      MessageRecord rec;
      rec.key = key;
      rec.status = Status::kRejected;
      rec.reason = out.reason;
      store_.create(rec, t);
    }
    out.status = store_.find(key)->status;
    return out;
  }
  store_.advance(key, reached, t);
  out.status = store_.find(key) ? store_.find(key)->status : reached;
  return out;
}

MessageRecord Service::inquire(const chain::CtxKey& k) const {
  const MessageRecord* r = store_.find(k);
  MAPRELAY_ENFORCE(r != nullptr, ErrorCode::kNotFound, "no record for " + k.str());
  return *r;
}

void Service::on_event(const relay::TraceEvent& e) {
  if (e.verdict != "ok") {
    if ((e.stage == relay::Stage::kVerifyRc || e.stage == relay::Stage::kVerifyDc) &&
        e.verdict != "duplicate") {
      store_.note_rejection(e.key, e.verdict, e.time);
    }
    return;
  }
  switch (e.stage) {
    case relay::Stage::kConfirmSc: store_.advance(e.key, Status::kConfirmedSc, e.time); break;
    case relay::Stage::kConfirmRc: store_.advance(e.key, Status::kConfirmedRc, e.time); break;
    case relay::Stage::kConfirmDc: store_.advance(e.key, Status::kConfirmedDc, e.time); break;
    default: break;
  }
}

}  // namespace maprelay::mos
