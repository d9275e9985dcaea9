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
#include "maprelay/chain/types.hpp"
#include "maprelay/crypto/hash_to_curve.hpp"
#include "maprelay/crypto/validator_set.hpp"

namespace maprelay::prover {

enum class Backend : std::uint8_t { kTransparent = 1, kCounting = 2 };
std::string_view to_string(Backend b);
Backend parse_backend(std::string_view s);

// Whether Hash-to-Base is priced inside the circuit (baseline) or done by
// the light client on chain (split).
enum class CircuitMode : std::uint8_t { kSplit = 1, kBaseline = 2 };

struct PublicInputs {
  crypto::ValidatorSetCommitment commitment;  // stored by the light client
  crypto::BaseFieldPair t;                    // hash_to_base(signing payload)
  Digest header_digest;                       // H(signing payload)
  std::optional<crypto::ValidatorSetCommitment> new_commitment;  // updates only
  chain::Threshold threshold;
  std::uint64_t claimed_weight = 0;
  HashAlgo hash = HashAlgo::kSha256;

  // Number of field elements the on-chain verifier feeds in.
  std::uint64_t field_count() const { return new_commitment ? 9 : 7; }
  Bytes serialize() const;
  static PublicInputs deserialize(Reader& r);
  bool operator==(const PublicInputs&) const = default;
};

struct Witness {
  crypto::ValidatorSet validators;  // opening of the commitment
  crypto::Bitmap bitmap;
  crypto::G1 signature;

  Bytes serialize() const;
  static Witness deserialize(Reader& r);
};

struct ZkStatement {
  PublicInputs inputs;
  Witness witness;
};

struct GateCostTable {
  std::uint64_t pairing_check = 490900;
  std::uint64_t aggregation_step = 3000;
  std::uint64_t base_to_g_field_mul = 100;
  std::uint64_t commitment_entry_hash = 27000;
  std::uint64_t hash_to_base_function = 2287660;
  // Above this many signers the circuit switches to the wide layout, which
  // adds wide_fixed + wide_per_signer * n.
  std::uint64_t small_circuit_max_signers = 4;
  std::uint64_t wide_fixed = 3805369;
  std::uint64_t wide_per_signer = 1324914;

  nlohmann::json to_json() const;
  static GateCostTable from_json(const nlohmann::json& j);
  bool operator==(const GateCostTable&) const = default;
};

// Field multiplications of base_to_g: two SVDW maps (an inversion, two square
// tests, a square root and the straight-line part each) and the final add.
std::uint64_t base_to_g_field_muls();

struct GateItem {
  std::string name;
  std::uint64_t count = 0;
  std::uint64_t unit = 0;
  std::uint64_t gates = 0;
  bool operator==(const GateItem&) const = default;
};

struct GateReport {
  CircuitMode mode = CircuitMode::kSplit;
  std::uint64_t signers = 0;
  std::vector<GateItem> items;
  std::uint64_t total = 0;

  nlohmann::json to_json() const;
  bool operator==(const GateReport&) const = default;
};

// Circuit size for a validator set of n keys.
GateReport gate_report(std::uint64_t n, CircuitMode mode, const GateCostTable& table = {});

struct CalibrationTargets {
  std::map<std::uint64_t, double> split;  // n -> gates
  std::uint64_t baseline_n = 8;
  double baseline = 2e7;
};
CalibrationTargets default_calibration_targets();

// Keeps the per-item constants (aggregation, field mul, entry hash) fixed and
// solves the rest: pairing_check exactly from the smallest target, the wide
// layout (wide_fixed, wide_per_signer) by relative least squares over the
// larger targets, and hash_to_base_function from the baseline target.
GateCostTable calibrate_gate_table(const CalibrationTargets& targets,
                                   const GateCostTable& base = {});

struct ZkProof {
  Backend backend = Backend::kTransparent;
  Digest attestation;
  PublicInputs inputs;
  Witness witness;
  std::optional<GateReport> report;

  Bytes serialize() const;
  static ZkProof deserialize(ByteView data);
};

// Canonical hash of (backend, public inputs, witness).
Digest attest(Backend backend, const PublicInputs& pi, const Witness& w);

enum class RelationFailure {
  kNone,
  kCommitmentMismatch,
  kBitmapLength,
  kWeightMismatch,
  kBelowThreshold,
  kEmptyQuorum,
  kBadSignature,
};
std::string_view to_string(RelationFailure f);

// Evaluates the circuit relation. The transparent route uses the fast
// arithmetic, the counting route the reference arithmetic.
RelationFailure check_relation(const ZkStatement& s, Backend route);

// Throws Error(kProveRefused) when the witness does not satisfy the relation.
ZkProof prove(const ZkStatement& s, Backend backend, CircuitMode mode = CircuitMode::kSplit,
              const GateCostTable& table = {});

// True iff the proof's attestation matches its contents, its inputs equal pi
// and the relation holds when re-executed. Verdicts are memoized by
// attestation.
bool verify_proof(const ZkProof& proof, const PublicInputs& pi);

void clear_verdict_cache();

}  // namespace maprelay::prover
