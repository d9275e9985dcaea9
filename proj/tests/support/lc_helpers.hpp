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

#include "maprelay/chain/chain.hpp"
#include "maprelay/lc/light_client.hpp"
#include "maprelay/prover/prover.hpp"

namespace maprelay::testing {

// A proof object whose attestation is internally consistent but whose
// witness is whatever the caller supplies.
inline prover::ZkProof forge_proof(const prover::ZkStatement& s,
                                   prover::Backend b = prover::Backend::kTransparent) {
  prover::ZkProof p;
  p.backend = b;
  p.inputs = s.inputs;
  p.witness = s.witness;
  p.attestation = prover::attest(b, p.inputs, p.witness);
  return p;
}

// Proof for bh: honest when the quorum is valid, forged otherwise.
inline prover::ZkProof any_proof(const chain::Chain& c, const chain::BlockHeader& bh,
                                 prover::Backend b = prover::Backend::kTransparent) {
  auto s = prover::header_statement(c, bh);
  if (prover::check_relation(s, b) == prover::RelationFailure::kNone) return prover::prove(s, b);
  return forge_proof(s, b);
}

// Re-signs bh with the given members of vs (secrets from c).
inline void resign(const chain::Chain& c, chain::BlockHeader& bh, const crypto::ValidatorSet& vs,
                   const crypto::Bitmap& signers) {
  bh.signature = c.sign_with(vs, signers, bh.signing_payload());
}

}  // namespace maprelay::testing
