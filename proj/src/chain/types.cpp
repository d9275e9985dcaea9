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

#include "maprelay/chain/types.hpp"

#include "maprelay/common/error.hpp"

namespace maprelay::chain {

namespace {

constexpr std::uint8_t kAssetTag = 1;
constexpr std::uint8_t kMessageTag = 2;

void write_payload(Writer& w, const Payload& p) {
  if (const auto* a = std::get_if<AssetPayload>(&p)) {
    w.u8(kAssetTag).str(a->token).u64(a->amount).str(a->instruction);
  } else {
    w.u8(kMessageTag).var_bytes(std::get<MessagePayload>(p).call);
  }
}

Payload read_payload(Reader& r) {
  std::uint8_t tag = r.u8();
  if (tag == kAssetTag) {
    AssetPayload a;
    a.token = r.str();
    a.amount = r.u64();
    a.instruction = r.str();
    return a;
  }
  MAPRELAY_ENFORCE(tag == kMessageTag, ErrorCode::kDecode, "unknown payload tag");
  return MessagePayload{r.var_bytes()};
}

}  // namespace

Bytes CrossChainTx::payload_bytes() const {
  Writer w;
  write_payload(w, payload);
  return std::move(w).take();
}

Bytes CrossChainTx::serialize() const {
  Writer w;
  w.str("maprelay/ctx/v1").u64(origin_chain).u64(dest_chain).u64(nonce);
  write_payload(w, payload);
  return std::move(w).take();
}

CrossChainTx CrossChainTx::deserialize(ByteView data) {
  Reader r(data);
  MAPRELAY_ENFORCE(r.str() == "maprelay/ctx/v1", ErrorCode::kDecode, "not a ctx encoding");
  CrossChainTx tx;
  tx.origin_chain = r.u64();
  tx.dest_chain = r.u64();
  tx.nonce = r.u64();
  tx.payload = read_payload(r);
  r.finish();
  return tx;
}

Digest CrossChainTx::hash(HashAlgo algo) const { return maprelay::hash(serialize(), algo); }

std::string CtxKey::str() const {
  return std::to_string(origin_chain) + ":" + std::to_string(nonce);
}

Bytes ReceiptMessage::serialize() const {
  Writer w;
  w.str("maprelay/receipt/v1").digest(tx_hash).var_bytes(event).u64(height);
  return std::move(w).take();
}

ReceiptMessage ReceiptMessage::deserialize(ByteView data) {
  Reader r(data);
  MAPRELAY_ENFORCE(r.str() == "maprelay/receipt/v1", ErrorCode::kDecode,
                   "not a receipt encoding");
  ReceiptMessage m;
  m.tx_hash = r.digest();
  m.event = r.var_bytes();
  m.height = r.u64();
  r.finish();
  return m;
}

Bytes BlockHeader::signing_payload() const {
  Writer w;
  w.str("maprelay/header/v1")
      .u64(chain_id)
      .u64(height)
      .u64(epoch)
      .u64(epoch_size)
      .u64(timestamp)
      .digest(parent)
      .digest(receipt_root)
      .u8(static_cast<std::uint8_t>(mode));
  if (mode == HeaderMode::kFullSet) {
    MAPRELAY_ENFORCE(validators.has_value(), ErrorCode::kPrecondition,
                     "full-set header without validators");
    w.var_bytes(validators->serialize());
  } else {
    MAPRELAY_ENFORCE(commitment.has_value(), ErrorCode::kPrecondition,
                     "committed header without commitment");
    w.digest(commitment->digest).u64(commitment->epoch);
  }
  return std::move(w).take();
}

Digest BlockHeader::signing_digest(HashAlgo algo) const {
  return maprelay::hash(signing_payload(), algo);
}

Bytes BlockHeader::serialize() const {
  Writer w;
  w.var_bytes(signing_payload());
  w.raw(crypto::compress(signature.point));
  w.raw(crypto::encode_bitmap(signature.bitmap));
  return std::move(w).take();
}

BlockHeader BlockHeader::deserialize(ByteView data) {
  Reader outer(data);
  Bytes payload = outer.var_bytes();
  BlockHeader h;
  Reader r(payload);
  MAPRELAY_ENFORCE(r.str() == "maprelay/header/v1", ErrorCode::kDecode, "not a header encoding");
  h.chain_id = r.u64();
  h.height = r.u64();
  h.epoch = r.u64();
  h.epoch_size = r.u64();
  MAPRELAY_ENFORCE(h.epoch_size > 0, ErrorCode::kDecode, "zero epoch size");
  h.timestamp = r.u64();
  h.parent = r.digest();
  h.receipt_root = r.digest();
  std::uint8_t mode = r.u8();
  if (mode == static_cast<std::uint8_t>(HeaderMode::kFullSet)) {
    h.mode = HeaderMode::kFullSet;
    h.validators = crypto::ValidatorSet::deserialize(r.var_bytes());
  } else {
    MAPRELAY_ENFORCE(mode == static_cast<std::uint8_t>(HeaderMode::kCommitted),
                     ErrorCode::kDecode, "bad header mode");
    h.mode = HeaderMode::kCommitted;
    crypto::ValidatorSetCommitment c;
    c.digest = r.digest();
    c.epoch = r.u64();
    h.commitment = c;
  }
  r.finish();
  auto sig = crypto::decompress_g1(outer.raw(crypto::kG1CompressedSize));
  MAPRELAY_ENFORCE(sig.has_value(), ErrorCode::kDecode, "bad signature point");
  h.signature.point = *sig;
  h.signature.bitmap = crypto::decode_bitmap(outer);
  outer.finish();
  return h;
}

Digest BlockHeader::hash(HashAlgo algo) const { return maprelay::hash(serialize(), algo); }

}  // namespace maprelay::chain
