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

#include "maprelay/prover/zk.hpp"

#include <cmath>
#include <mutex>

#include "maprelay/common/error.hpp"
#include "maprelay/crypto/bls.hpp"
#include "maprelay/crypto/counters.hpp"
#include "maprelay/crypto/reference.hpp"

namespace maprelay::prover {

namespace {

constexpr std::string_view kProofTag = "maprelay/zkproof/v1";
constexpr std::string_view kAttestTag = "maprelay/zk-attest/v1";

void write_commitment(Writer& w, const crypto::ValidatorSetCommitment& c) {
  w.digest(c.digest).u64(c.epoch);
}

crypto::ValidatorSetCommitment read_commitment(Reader& r) {
  crypto::ValidatorSetCommitment c;
  c.digest = r.digest();
  c.epoch = r.u64();
  return c;
}

// Square-and-multiply cost of a fixed public exponent.
std::uint64_t exp_muls(const crypto::Limbs& e) {
  std::uint64_t ones = 0;
  for (unsigned i = 0; i < static_cast<unsigned>(crypto::limbs::bit_length(e)); ++i) ones += crypto::limbs::bit(e, i);
  return (crypto::limbs::bit_length(e) - 1) + (ones - 1);
}

crypto::Limbs shifted(crypto::Limbs v, bool add_one, bool sub_one, unsigned shift) {
  crypto::Limbs one{1, 0, 0, 0};
  if (add_one) crypto::limbs::add_inplace(v, one);
  if (sub_one) crypto::limbs::sub_inplace(v, one);
  for (unsigned s = 0; s < shift; ++s) {
    for (int i = 0; i < 4; ++i) {
      v[i] = (v[i] >> 1) | (i < 3 ? (v[i + 1] << 63) : 0);
    }
  }
  return v;
}

struct VerdictCache {
  std::mutex mu;
  std::map<Digest, bool> verdicts;
};

VerdictCache& cache() {
  static VerdictCache c;
  return c;
}

}  // namespace

std::string_view to_string(Backend b) {
  return b == Backend::kTransparent ? "transparent" : "counting";
}

Backend parse_backend(std::string_view s) {
  if (s == "transparent") return Backend::kTransparent;
  if (s == "counting") return Backend::kCounting;
  throw Error(ErrorCode::kConfig, "unknown proof backend: " + std::string(s));
}

std::string_view to_string(RelationFailure f) {
  switch (f) {
    case RelationFailure::kNone: return "none";
    case RelationFailure::kCommitmentMismatch: return "commitment-mismatch";
    case RelationFailure::kBitmapLength: return "bitmap-length";
    case RelationFailure::kWeightMismatch: return "weight-mismatch";
    case RelationFailure::kBelowThreshold: return "below-threshold";
    case RelationFailure::kEmptyQuorum: return "empty-quorum";
    case RelationFailure::kBadSignature: return "bad-signature";
  }
  return "?";
}

Bytes PublicInputs::serialize() const {
  Writer w;
  write_commitment(w, commitment);
  w.raw(t.to_bytes());
  w.digest(header_digest);
  w.boolean(new_commitment.has_value());
  if (new_commitment) write_commitment(w, *new_commitment);
  w.u64(threshold.num).u64(threshold.den).u64(claimed_weight);
  w.u8(static_cast<std::uint8_t>(hash));
  return std::move(w).take();
}

PublicInputs PublicInputs::deserialize(Reader& r) {
  PublicInputs pi;
  pi.commitment = read_commitment(r);
  pi.t = crypto::BaseFieldPair::from_bytes(r.raw(64));
  pi.header_digest = r.digest();
  if (r.boolean()) pi.new_commitment = read_commitment(r);
  pi.threshold.num = r.u64();
  pi.threshold.den = r.u64();
  pi.claimed_weight = r.u64();
  std::uint8_t h = r.u8();
  MAPRELAY_ENFORCE(h <= static_cast<std::uint8_t>(HashAlgo::kBlake2s256), ErrorCode::kDecode,
                   "bad hash tag");
  pi.hash = static_cast<HashAlgo>(h);
  return pi;
}

Bytes Witness::serialize() const {
  Writer w;
  w.var_bytes(validators.serialize());
  w.raw(crypto::encode_bitmap(bitmap));
  w.raw(crypto::compress(signature));
  return std::move(w).take();
}

Witness Witness::deserialize(Reader& r) {
  Witness w;
  w.validators = crypto::ValidatorSet::deserialize(r.var_bytes());
  w.bitmap = crypto::decode_bitmap(r);
  auto sig = crypto::decompress_g1(r.raw(32));
  MAPRELAY_ENFORCE(sig.has_value(), ErrorCode::kDecode, "bad witness signature");
  w.signature = *sig;
  return w;
}

#define MAPRELAY_GATE_FIELDS(X)                                                        \
  X(pairing_check) X(aggregation_step) X(base_to_g_field_mul) X(commitment_entry_hash) \
  X(hash_to_base_function) X(small_circuit_max_signers) X(wide_fixed) X(wide_per_signer)

nlohmann::json GateCostTable::to_json() const {
  nlohmann::json j;
#define X(f) j[#f] = f;
  MAPRELAY_GATE_FIELDS(X)
#undef X
  return j;
}

GateCostTable GateCostTable::from_json(const nlohmann::json& j) {
  GateCostTable t;
#define X(f) \
  if (j.contains(#f)) t.f = j.at(#f).get<std::uint64_t>();
  MAPRELAY_GATE_FIELDS(X)
#undef X
  return t;
}

std::uint64_t base_to_g_field_muls() {
  const crypto::Limbs& p = crypto::FpParams::kModulus;
  crypto::Limbs p_minus_2 = shifted(shifted(p, false, true, 0), false, true, 0);
  std::uint64_t inv = exp_muls(p_minus_2);
  std::uint64_t legendre = exp_muls(shifted(p, false, true, 1));
  std::uint64_t sqrt = exp_muls(shifted(p, true, false, 2));
  constexpr std::uint64_t kStraightLine = 16;
  std::uint64_t per_map = inv + 2 * legendre + sqrt + kStraightLine;
  constexpr std::uint64_t kPointAdd = 3;
  return 2 * per_map + kPointAdd;
}

nlohmann::json GateReport::to_json() const {
  nlohmann::json items_j = nlohmann::json::array();
  for (const auto& i : items) {
    items_j.push_back({{"name", i.name}, {"count", i.count}, {"unit", i.unit}, {"gates", i.gates}});
  }
  return {{"mode", mode == CircuitMode::kSplit ? "split" : "baseline"},
          {"signers", signers},
          {"items", items_j},
          {"total", total}};
}

GateReport gate_report(std::uint64_t n, CircuitMode mode, const GateCostTable& table) {
  MAPRELAY_ENFORCE(n > 0, ErrorCode::kInvalidArgument, "gate report needs n > 0");
  GateReport rep;
  rep.mode = mode;
  rep.signers = n;
  auto add = [&](std::string name, std::uint64_t count, std::uint64_t unit) {
    rep.items.push_back({std::move(name), count, unit, count * unit});
    rep.total += count * unit;
  };
  add("pairing_check", 1, table.pairing_check);
  add("aggregation_step", n - 1, table.aggregation_step);
  add("base_to_g_field_mul", base_to_g_field_muls(), table.base_to_g_field_mul);
  add("commitment_entry_hash", n, table.commitment_entry_hash);
  if (n > table.small_circuit_max_signers) {
    add("wide_layout_fixed", 1, table.wide_fixed);
    add("wide_layout_signer", n, table.wide_per_signer);
  }
  if (mode == CircuitMode::kBaseline) add("hash_to_base_function", 2, table.hash_to_base_function);
  return rep;
}

CalibrationTargets default_calibration_targets() {
  CalibrationTargets t;
  t.split = {{4, 0.9e6}, {8, 15.7e6}, {16, 25.2e6}, {32, 49.3e6}};
  t.baseline_n = 8;
  t.baseline = 2e7;
  return t;
}

GateCostTable calibrate_gate_table(const CalibrationTargets& targets, const GateCostTable& base) {
  MAPRELAY_ENFORCE(targets.split.size() >= 3, ErrorCode::kInvalidArgument,
                   "calibration needs at least three split targets");
  GateCostTable t = base;
  auto fixed_part = [&](std::uint64_t n) {
    t.pairing_check = 0;
    t.wide_fixed = 0;
    t.wide_per_signer = 0;
    t.hash_to_base_function = 0;
    return static_cast<double>(gate_report(n, CircuitMode::kSplit, t).total);
  };
  auto [n0, y0] = *targets.split.begin();
  MAPRELAY_ENFORCE(n0 <= base.small_circuit_max_signers, ErrorCode::kInvalidArgument,
                   "smallest target must use the small layout");
  double pairing = y0 - fixed_part(n0);
  MAPRELAY_ENFORCE(pairing > 0, ErrorCode::kInvalidArgument, "pairing cost would be negative");

  // Minimize sum(((pairing + fixed(n) + S + k n) - y) / y)^2 over S, k.
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (auto it = std::next(targets.split.begin()); it != targets.split.end(); ++it) {
    double n = static_cast<double>(it->first), y = it->second;
    MAPRELAY_ENFORCE(it->first > base.small_circuit_max_signers, ErrorCode::kInvalidArgument,
                     "only the smallest target may use the small layout");
    double resid = (y - pairing - fixed_part(it->first)) / y;
    double x1 = 1 / y, x2 = n / y;
    a11 += x1 * x1;
    a12 += x1 * x2;
    a22 += x2 * x2;
    b1 += x1 * resid;
    b2 += x2 * resid;
  }
  double det = a11 * a22 - a12 * a12;
  MAPRELAY_ENFORCE(std::abs(det) > 0, ErrorCode::kInvalidArgument, "degenerate calibration");
  double wide_fixed = (b1 * a22 - b2 * a12) / det;
  double wide_per = (a11 * b2 - a12 * b1) / det;
  MAPRELAY_ENFORCE(wide_fixed >= 0 && wide_per >= 0, ErrorCode::kInvalidArgument,
                   "calibration produced negative constants");

  t.pairing_check = static_cast<std::uint64_t>(std::llround(pairing));
  t.wide_fixed = static_cast<std::uint64_t>(std::llround(wide_fixed));
  t.wide_per_signer = static_cast<std::uint64_t>(std::llround(wide_per));
  t.hash_to_base_function = 0;
  double split_at_baseline =
      static_cast<double>(gate_report(targets.baseline_n, CircuitMode::kSplit, t).total);
  double hb = (targets.baseline - split_at_baseline) / 2;
  MAPRELAY_ENFORCE(hb >= 0, ErrorCode::kInvalidArgument, "baseline below split");
  t.hash_to_base_function = static_cast<std::uint64_t>(std::llround(hb));
  return t;
}

Bytes ZkProof::serialize() const {
  Writer w;
  w.str(kProofTag);
  w.u8(static_cast<std::uint8_t>(backend));
  w.digest(attestation);
  w.var_bytes(inputs.serialize());
  w.var_bytes(witness.serialize());
  w.boolean(report.has_value());
  if (report) w.str(report->to_json().dump());
  return std::move(w).take();
}

ZkProof ZkProof::deserialize(ByteView data) {
  Reader r(data);
  MAPRELAY_ENFORCE(r.str() == kProofTag, ErrorCode::kDecode, "bad proof tag");
  ZkProof p;
  std::uint8_t b = r.u8();
  MAPRELAY_ENFORCE(b == 1 || b == 2, ErrorCode::kDecode, "bad backend tag");
  p.backend = static_cast<Backend>(b);
  p.attestation = r.digest();
  Bytes pi = r.var_bytes();
  Reader pr(pi);
  p.inputs = PublicInputs::deserialize(pr);
  pr.finish();
  Bytes wb = r.var_bytes();
  Reader wr(wb);
  p.witness = Witness::deserialize(wr);
  wr.finish();
  if (r.boolean()) {
    auto j = nlohmann::json::parse(r.str());
    GateReport rep;
    rep.mode = j.at("mode") == "split" ? CircuitMode::kSplit : CircuitMode::kBaseline;
    rep.signers = j.at("signers").get<std::uint64_t>();
    for (const auto& i : j.at("items")) {
      rep.items.push_back({i.at("name").get<std::string>(), i.at("count").get<std::uint64_t>(),
                           i.at("unit").get<std::uint64_t>(), i.at("gates").get<std::uint64_t>()});
    }
    rep.total = j.at("total").get<std::uint64_t>();
    p.report = std::move(rep);
  }
  r.finish();
  return p;
}

Digest attest(Backend backend, const PublicInputs& pi, const Witness& w) {
  Writer wr;
  wr.str(kAttestTag);
  wr.u8(static_cast<std::uint8_t>(backend));
  wr.var_bytes(pi.serialize());
  wr.var_bytes(w.serialize());
  return hash(wr.bytes());
}

RelationFailure check_relation(const ZkStatement& s, Backend route) {
  const auto& pi = s.inputs;
  const auto& w = s.witness;
  if (w.validators.empty()) return RelationFailure::kCommitmentMismatch;
  if (crypto::commit_validator_set(w.validators, pi.hash).digest != pi.commitment.digest) {
    return RelationFailure::kCommitmentMismatch;
  }
  if (w.bitmap.size() != w.validators.size()) return RelationFailure::kBitmapLength;
  std::uint64_t weight = w.validators.weight_of(w.bitmap);
  if (weight != pi.claimed_weight) return RelationFailure::kWeightMismatch;
  if (!pi.threshold.valid() || !pi.threshold.met(weight, w.validators.total_weight())) {
    return RelationFailure::kBelowThreshold;
  }
  if (weight == 0) return RelationFailure::kEmptyQuorum;

  if (route == Backend::kTransparent) {
    crypto::G2 apk = crypto::aggregate_pubkeys(w.validators, w.bitmap);
    if (apk.is_infinity()) return RelationFailure::kEmptyQuorum;
    return crypto::verify_with_base(apk, pi.t, w.signature) ? RelationFailure::kNone
                                                            : RelationFailure::kBadSignature;
  }

  namespace ref = crypto::reference;
  ref::P2 apk;
  for (std::size_t i = 0; i < w.bitmap.size(); ++i) {
    if (w.bitmap[i]) apk = ref::add(apk, ref::from_fast(w.validators.entries()[i].pk));
  }
  if (apk.inf) return RelationFailure::kEmptyQuorum;
  ref::P1 sig = ref::from_fast(w.signature);
  if (sig.inf || !ref::on_curve(sig)) return RelationFailure::kBadSignature;
  ref::P1 h = ref::base_to_g(ref::from_fast(pi.t.t0), ref::from_fast(pi.t.t1));
  ref::P2 neg_apk = apk;
  neg_apk.y.a = (ref::p() - neg_apk.y.a) % ref::p();
  neg_apk.y.b = (ref::p() - neg_apk.y.b) % ref::p();
  ref::P2 g2 = ref::from_fast(crypto::G2::generator());
  auto& ctr = crypto::op_counters();
  ctr.pairing_checks += 1;
  ctr.pairing_pairs += 2;
  return ref::pairing_check({{sig, g2}, {h, neg_apk}}) ? RelationFailure::kNone
                                                       : RelationFailure::kBadSignature;
}

ZkProof prove(const ZkStatement& s, Backend backend, CircuitMode mode, const GateCostTable& table) {
  RelationFailure f = check_relation(s, backend);
  if (f != RelationFailure::kNone) {
    throw Error(ErrorCode::kProveRefused,
                "witness does not satisfy the statement: " + std::string(to_string(f)));
  }
  ZkProof p;
  p.backend = backend;
  p.inputs = s.inputs;
  p.witness = s.witness;
  p.attestation = attest(backend, p.inputs, p.witness);
  if (backend == Backend::kCounting) {
    p.report = gate_report(s.witness.validators.size(), mode, table);
  }
  {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    c.verdicts[p.attestation] = true;
  }
  return p;
}

bool verify_proof(const ZkProof& proof, const PublicInputs& pi) {
  if (!(proof.inputs == pi)) return false;
  Digest att = attest(proof.backend, proof.inputs, proof.witness);
  if (att != proof.attestation) return false;
  auto& c = cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.verdicts.find(att);
    if (it != c.verdicts.end()) return it->second;
  }
  bool ok = check_relation({proof.inputs, proof.witness}, proof.backend) == RelationFailure::kNone;
  std::lock_guard<std::mutex> lock(c.mu);
  c.verdicts[att] = ok;
  return ok;
}

void clear_verdict_cache() {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.verdicts.clear();
}

}  // namespace maprelay::prover
