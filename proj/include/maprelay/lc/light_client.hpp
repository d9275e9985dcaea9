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
#include <string_view>

#include "maprelay/chain/types.hpp"
#include "maprelay/crypto/merkle.hpp"
#include "maprelay/lc/gas.hpp"
#include "maprelay/prover/zk.hpp"

namespace maprelay::lc {

enum class Rejection {
  kNone,
  kWrongChain,
  kMalformed,
  kEpochGap,
  kInsufficientWeight,
  kBadSignature,
  kPublicInputMismatch,
  kProofInvalid,
  kMerkleFail,
};
std::string_view to_string(Rejection r);

// Hard-coded at setup.
struct LcParams {
  chain::ChainId chain_id = 0;
  std::uint64_t epoch_size = 1;
  chain::Threshold threshold;
  HashAlgo hash = HashAlgo::kSha256;
};

struct NormalLcState {
  LcParams params;
  std::uint64_t epoch = 0;
  crypto::ValidatorSet validators;
};

struct HybridLcState {
  LcParams params;
  std::uint64_t epoch = 0;
  crypto::ValidatorSetCommitment commitment;
};

template <class State>
struct UpdateOutcome {
  State state;  // unchanged on rejection
  Rejection rejection = Rejection::kNone;
  GasReceipt gas;
  bool ok() const { return rejection == Rejection::kNone; }
};

struct VerifyOutcome {
  bool accepted = false;
  Rejection rejection = Rejection::kNone;
  GasReceipt gas;
};

// Throws kInvalidArgument for an empty set or invalid threshold.
UpdateOutcome<NormalLcState> lc_setup(const LcParams& params, const crypto::ValidatorSet& genesis,
                                      const GasCostTable& table = {});
// Expects the boundary header announcing epoch state.epoch + 1.
UpdateOutcome<NormalLcState> lc_update(const NormalLcState& state, const chain::BlockHeader& bh,
                                       const GasCostTable& table = {});
VerifyOutcome lc_verify(const NormalLcState& state, const chain::ReceiptMessage& m,
                        const chain::BlockHeader& bh, const crypto::MerkleProof& proof,
                        const GasCostTable& table = {});

UpdateOutcome<HybridLcState> hlc_setup(const LcParams& params, const crypto::ValidatorSet& genesis,
                                       const GasCostTable& table = {});
UpdateOutcome<HybridLcState> hlc_update(const HybridLcState& state, const chain::BlockHeader& bh,
                                        const prover::ZkProof& proof,
                                        const GasCostTable& table = {});
VerifyOutcome hlc_verify(const HybridLcState& state, const chain::ReceiptMessage& m,
                         const chain::BlockHeader& bh, const crypto::MerkleProof& mkl,
                         const prover::ZkProof& zk, const GasCostTable& table = {});

// Commitment to the set a header announces: the carried commitment in
// committed mode, commit(validators) in full mode. Empty when bh carries none.
std::optional<crypto::ValidatorSetCommitment> announced_commitment(const chain::BlockHeader& bh,
                                                                   HashAlgo algo);

// The public inputs a hybrid client derives for bh when it holds commitment c.
// Provers call this with their own view of c.
prover::PublicInputs statement_inputs(const LcParams& params,
                                      const crypto::ValidatorSetCommitment& c,
                                      const chain::BlockHeader& bh, std::uint64_t claimed_weight);

}  // namespace maprelay::lc
