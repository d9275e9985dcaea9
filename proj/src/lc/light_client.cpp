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

#include "maprelay/lc/light_client.hpp"

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/bls.hpp"

namespace maprelay::lc {

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::kNone: return "none";
    case Rejection::kWrongChain: return "wrong-chain";
    case Rejection::kMalformed: return "malformed";
    case Rejection::kEpochGap: return "epoch-gap";
    case Rejection::kInsufficientWeight: return "insufficient-weight";
    case Rejection::kBadSignature: return "bad-signature";
    case Rejection::kPublicInputMismatch: return "public-input-mismatch";
    case Rejection::kProofInvalid: return "proof-invalid";
    case Rejection::kMerkleFail: return "merkle-fail";
  }
  return "?";
}

namespace {

void check_params(const LcParams& p, const crypto::ValidatorSet& genesis) {
  MAPRELAY_ENFORCE(!genesis.empty(), ErrorCode::kInvalidArgument, "empty genesis validator set");
  MAPRELAY_ENFORCE(p.epoch_size >= 1, ErrorCode::kInvalidArgument, "epoch size must be >= 1");
  MAPRELAY_ENFORCE(p.threshold.valid(), ErrorCode::kInvalidArgument, "invalid threshold");
}

bool carries_validators(const chain::BlockHeader& bh) {
  return bh.mode == chain::HeaderMode::kFullSet ? bh.validators.has_value()
                                                : bh.commitment.has_value();
}

// Signature check of bh against vs, shared by update and verify.
Rejection check_quorum(const NormalLcState& s, const chain::BlockHeader& bh, GasMeter& gas) {
  const auto& vs = s.validators;
  gas.storage_read(vs.size() * gas.table().validator_entry_words);
  if (bh.signature.bitmap.size() != vs.size()) return Rejection::kMalformed;
  std::uint64_t w = vs.weight_of(bh.signature.bitmap);
  if (w == 0 || !s.params.threshold.met(w, vs.total_weight())) {
    return Rejection::kInsufficientWeight;
  }
  Bytes payload = bh.signing_payload();
  gas.hash();  // header digest
  crypto::BaseFieldPair t = crypto::hash_to_base(payload);
  gas.hash(kHashToBaseHashes);
  std::uint64_t signers = 0;
  for (bool b : bh.signature.bitmap) signers += b;
  crypto::G2 apk = crypto::aggregate_pubkeys(vs, bh.signature.bitmap);
  gas.g2_add(signers - 1);
  gas.field_exp(kBaseToGFieldExps);
  gas.g1_add(1);
  gas.pairing_check(2);
  return crypto::verify_with_base(apk, t, bh.signature.point) ? Rejection::kNone
                                                              : Rejection::kBadSignature;
}

Rejection check_receipt(const chain::ReceiptMessage& m, const chain::BlockHeader& bh,
                        const crypto::MerkleProof& proof, HashAlgo algo, GasMeter& gas) {
  gas.hash();  // leaf
  gas.merkle_levels(proof.path.size());
  return crypto::merkle_verify(bh.receipt_root, m.serialize(), proof, algo) ? Rejection::kNone
                                                                           : Rejection::kMerkleFail;
}

template <class State>
UpdateOutcome<State> reject(const State& s, Rejection r, GasMeter& gas) {
  return {s, r, gas.take()};
}

}  // namespace

UpdateOutcome<NormalLcState> lc_setup(const LcParams& params, const crypto::ValidatorSet& genesis,
                                      const GasCostTable& table) {
  check_params(params, genesis);
  GasMeter gas(table, "lc_setup");
  gas.storage_write(genesis.size() * table.validator_entry_words);
  NormalLcState s{params, 0, genesis.with_epoch(0)};
  return {std::move(s), Rejection::kNone, gas.take()};
}

UpdateOutcome<NormalLcState> lc_update(const NormalLcState& state, const chain::BlockHeader& bh,
                                       const GasCostTable& table) {
  GasMeter gas(table, "lc_update");
  gas.storage_read(table.lc_state_words);
  if (bh.chain_id != state.params.chain_id) return reject(state, Rejection::kWrongChain, gas);
  if (bh.mode != chain::HeaderMode::kFullSet || !bh.validators || !bh.is_transition() ||
      bh.epoch_size != state.params.epoch_size) {
    return reject(state, Rejection::kMalformed, gas);
  }
  if (bh.epoch != state.epoch + 1) return reject(state, Rejection::kEpochGap, gas);
  if (bh.validators->empty() || bh.validators->epoch() != bh.epoch) {
    return reject(state, Rejection::kMalformed, gas);
  }
  Rejection r = check_quorum(state, bh, gas);
  if (r != Rejection::kNone) return reject(state, r, gas);
  gas.storage_write(bh.validators->size() * table.validator_entry_words + table.lc_state_words);
  NormalLcState next{state.params, bh.epoch, *bh.validators};
  return {std::move(next), Rejection::kNone, gas.take()};
}

VerifyOutcome lc_verify(const NormalLcState& state, const chain::ReceiptMessage& m,
                        const chain::BlockHeader& bh, const crypto::MerkleProof& proof,
                        const GasCostTable& table) {
  GasMeter gas(table, "lc_verify");
  gas.storage_read(table.lc_state_words);
  auto done = [&](Rejection r) { return VerifyOutcome{r == Rejection::kNone, r, gas.take()}; };
  if (bh.chain_id != state.params.chain_id) return done(Rejection::kWrongChain);
  if (bh.epoch != state.epoch || bh.is_transition()) return done(Rejection::kEpochGap);
  Rejection r = check_quorum(state, bh, gas);
  if (r != Rejection::kNone) return done(r);
  return done(check_receipt(m, bh, proof, state.params.hash, gas));
}

std::optional<crypto::ValidatorSetCommitment> announced_commitment(const chain::BlockHeader& bh,
                                                                   HashAlgo algo) {
  if (bh.mode == chain::HeaderMode::kCommitted) return bh.commitment;
  if (!bh.validators || bh.validators->empty()) return std::nullopt;
  auto c = crypto::commit_validator_set(*bh.validators, algo);
  c.epoch = bh.validators->epoch();
  return c;
}

prover::PublicInputs statement_inputs(const LcParams& params,
                                      const crypto::ValidatorSetCommitment& c,
                                      const chain::BlockHeader& bh, std::uint64_t claimed_weight) {
  prover::PublicInputs pi;
  Bytes payload = bh.signing_payload();
  pi.commitment = c;
  pi.t = crypto::hash_to_base(payload);
  pi.header_digest = hash(payload, params.hash);
  if (bh.is_transition()) pi.new_commitment = announced_commitment(bh, params.hash);
  pi.threshold = params.threshold;
  pi.claimed_weight = claimed_weight;
  pi.hash = params.hash;
  return pi;
}

UpdateOutcome<HybridLcState> hlc_setup(const LcParams& params, const crypto::ValidatorSet& genesis,
                                       const GasCostTable& table) {
  check_params(params, genesis);
  GasMeter gas(table, "hlc_setup");
  // Computed off chain and supplied as a constructor argument.
  auto c = crypto::commit_validator_set(genesis, params.hash);
  c.epoch = 0;
  gas.storage_write(table.commitment_record_words);
  HybridLcState s{params, 0, c};
  return {std::move(s), Rejection::kNone, gas.take()};
}

UpdateOutcome<HybridLcState> hlc_update(const HybridLcState& state, const chain::BlockHeader& bh,
                                        const prover::ZkProof& proof, const GasCostTable& table) {
  GasMeter gas(table, "hlc_update");
  gas.storage_read(table.lc_state_words + table.commitment_record_words);
  if (bh.chain_id != state.params.chain_id) return reject(state, Rejection::kWrongChain, gas);
  if (!bh.is_transition() || !carries_validators(bh) || bh.epoch_size != state.params.epoch_size) {
    return reject(state, Rejection::kMalformed, gas);
  }
  if (bh.epoch != state.epoch + 1) return reject(state, Rejection::kEpochGap, gas);
  gas.hash();  // header digest
  gas.hash(kHashToBaseHashes);
  gas.hash();  // new commitment (carried or recomputed)
  prover::PublicInputs pi =
      statement_inputs(state.params, state.commitment, bh, proof.inputs.claimed_weight);
  if (!pi.new_commitment || pi.new_commitment->epoch != bh.epoch) {
    return reject(state, Rejection::kMalformed, gas);
  }
  gas.snark_verify(pi.field_count());
  if (!(proof.inputs == pi)) return reject(state, Rejection::kPublicInputMismatch, gas);
  if (!prover::verify_proof(proof, pi)) return reject(state, Rejection::kProofInvalid, gas);
  gas.storage_write(table.commitment_record_words);
  HybridLcState next{state.params, bh.epoch, *pi.new_commitment};
  return {std::move(next), Rejection::kNone, gas.take()};
}

VerifyOutcome hlc_verify(const HybridLcState& state, const chain::ReceiptMessage& m,
                         const chain::BlockHeader& bh, const crypto::MerkleProof& mkl,
                         const prover::ZkProof& zk, const GasCostTable& table) {
  GasMeter gas(table, "hlc_verify");
  gas.storage_read(table.lc_state_words + table.commitment_record_words);
  auto done = [&](Rejection r) { return VerifyOutcome{r == Rejection::kNone, r, gas.take()}; };
  if (bh.chain_id != state.params.chain_id) return done(Rejection::kWrongChain);
  if (bh.epoch != state.epoch || bh.is_transition()) return done(Rejection::kEpochGap);
  gas.hash();  // header digest
  gas.hash(kHashToBaseHashes);
  prover::PublicInputs pi =
      statement_inputs(state.params, state.commitment, bh, zk.inputs.claimed_weight);
  gas.snark_verify(pi.field_count());
  if (!(zk.inputs == pi)) return done(Rejection::kPublicInputMismatch);
  if (!prover::verify_proof(zk, pi)) return done(Rejection::kProofInvalid);
  return done(check_receipt(m, bh, mkl, state.params.hash, gas));
}

}  // namespace maprelay::lc
