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

#include <gtest/gtest.h>

#include "maprelay/common/error.hpp"
#include "maprelay/common/rng.hpp"
#include "maprelay/prover/prover.hpp"
#include "support/fixtures.hpp"
#include "support/lc_helpers.hpp"

using namespace maprelay;
using namespace maprelay::prover;
using chain::Chain;
using maprelay::testing::asset_tx;
using maprelay::testing::chain_config;
using maprelay::testing::forge_proof;

TEST(GateModel, BaseToGFieldMulsFromExponents) {
  // 2 * (inv + 2 legendre + sqrt + 16) + 3 with the BN254 exponent schedules.
  EXPECT_EQ(base_to_g_field_muls(), 2921u);
}

TEST(GateModel, SplitTotalsWithinFivePercent) {
  const std::pair<std::uint64_t, double> table2[] = {
      {4, 0.9e6}, {8, 15.7e6}, {16, 25.2e6}, {32, 49.3e6}};
  for (auto [n, want] : table2) {
    double got = static_cast<double>(gate_report(n, CircuitMode::kSplit).total);
    EXPECT_NEAR(got / want, 1.0, 0.05) << n;
  }
  EXPECT_EQ(gate_report(4, CircuitMode::kSplit).total, 900000u);
}

TEST(GateModel, BaselineAndSplitGain) {
  auto split8 = gate_report(8, CircuitMode::kSplit).total;
  auto base8 = gate_report(8, CircuitMode::kBaseline).total;
  EXPECT_NEAR(static_cast<double>(base8), 2e7, 2.0);
  double ratio = static_cast<double>(split8) / static_cast<double>(base8);
  EXPECT_GE(ratio, 0.75);
  EXPECT_LE(ratio, 0.80);
  for (std::uint64_t n : {4, 8, 16, 32}) {
    EXPECT_LE(gate_report(n, CircuitMode::kSplit).total,
              gate_report(n, CircuitMode::kBaseline).total);
  }
}

TEST(GateModel, ReportItemsSumAndExport) {
  auto r = gate_report(16, CircuitMode::kBaseline);
  std::uint64_t sum = 0;
  for (const auto& i : r.items) {
    EXPECT_EQ(i.gates, i.count * i.unit);
    sum += i.gates;
  }
  EXPECT_EQ(sum, r.total);
  auto j = r.to_json();
  EXPECT_EQ(j.at("total").get<std::uint64_t>(), r.total);
  EXPECT_EQ(j.at("mode"), "baseline");
  EXPECT_THROW(gate_report(0, CircuitMode::kSplit), Error);
}

TEST(GateModel, CalibrationReproducesDefaults) {
  // Values from an independent float64 least-squares fit of the same model.
  GateCostTable t = calibrate_gate_table(default_calibration_targets());
  EXPECT_EQ(t.pairing_check, 490900u);
  EXPECT_NEAR(static_cast<double>(t.wide_fixed), 3805368.5, 1.0);
  EXPECT_NEAR(static_cast<double>(t.wide_per_signer), 1324913.55, 1.0);
  EXPECT_NEAR(static_cast<double>(t.hash_to_base_function), 2287661.5, 2.0);
  EXPECT_EQ(t, GateCostTable{});
  auto j = t.to_json();
  EXPECT_EQ(GateCostTable::from_json(j), t);
  CalibrationTargets bad = default_calibration_targets();
  bad.split.erase(32);
  bad.split.erase(16);
  EXPECT_THROW(calibrate_gate_table(bad), Error);
}

namespace {

struct Fixture {
  Chain c{chain_config(1, 8, 3)};
  Fixture() {
    for (std::uint64_t t = 1; t <= 4; ++t) {
      c.submit_tx(asset_tx(1, 2, t));
      c.produce_block(t);
    }
  }
};

}  // namespace

TEST(Prove, CountingBackendReportsGates) {
  Fixture f;
  auto p = prove_header(f.c, f.c.block(1).header, Backend::kCounting);
  ASSERT_TRUE(p.report);
  EXPECT_EQ(p.report->total, gate_report(8, CircuitMode::kSplit).total);
  EXPECT_TRUE(verify_proof(p, p.inputs));
  auto base = prove_header(f.c, f.c.block(1).header, Backend::kCounting, CircuitMode::kBaseline);
  EXPECT_EQ(base.report->mode, CircuitMode::kBaseline);
  EXPECT_FALSE(prove_header(f.c, f.c.block(1).header).report);
}

TEST(Prove, SerializationRoundTrip) {
  Fixture f;
  for (auto b : {Backend::kTransparent, Backend::kCounting}) {
    auto p = prove_header(f.c, f.c.block(3).header, b);
    Bytes s = p.serialize();
    ZkProof q = ZkProof::deserialize(s);
    EXPECT_EQ(q.serialize(), s);
    EXPECT_EQ(q.attestation, p.attestation);
    EXPECT_EQ(q.report, p.report);
    clear_verdict_cache();
    EXPECT_TRUE(verify_proof(q, p.inputs));
    s.push_back(0);
    EXPECT_THROW(ZkProof::deserialize(s), Error);
  }
}

TEST(Prove, BindingToHeader) {
  Fixture f;
  auto p1 = prove_header(f.c, f.c.block(1).header);
  auto s2 = header_statement(f.c, f.c.block(2).header);
  EXPECT_TRUE(verify_proof(p1, p1.inputs));
  EXPECT_FALSE(verify_proof(p1, s2.inputs));
}

// Statements over random quorums, valid and invalid; the two backends must
// agree on every one.
TEST(Backends, CrossCheckVerdicts) {
  Chain c(chain_config(5, 5, 100));
  for (std::uint64_t t = 1; t <= 5; ++t) c.produce_block(t);
  Chain other(chain_config(6, 5, 100));
  DetRng rng(77);
  std::size_t valid = 0, total = 0;
  for (int i = 0; i < 500; ++i) {
    chain::BlockHeader bh = c.block(1 + rng.below(5)).header;
    crypto::Bitmap signers(5);
    for (std::size_t k = 0; k < 5; ++k) signers[k] = rng.chance(7, 8);
    maprelay::testing::resign(c, bh, c.validator_set(0), signers);
    ZkStatement s = header_statement(c, bh);
    switch (rng.below(8)) {
      case 0: s.witness.signature = s.witness.signature + crypto::G1::generator(); break;
      case 1: s.inputs.claimed_weight += 1; break;
      case 2: s.witness.bitmap[rng.below(5)].flip(); break;
      case 3: s.witness.validators = other.validator_set(0); break;
      case 4: s.inputs.t.t0 = s.inputs.t.t0 + crypto::Fp::one(); break;
      case 5: s.inputs.threshold = {9, 10}; break;
      default: break;
    }
    auto a = check_relation(s, Backend::kTransparent);
    auto b = check_relation(s, Backend::kCounting);
    EXPECT_EQ(a == RelationFailure::kNone, b == RelationFailure::kNone) << i;
    EXPECT_EQ(a, b) << i;
    valid += a == RelationFailure::kNone;
    ++total;
  }
  EXPECT_EQ(total, 500u);
  EXPECT_GT(valid, 100u);
  EXPECT_LT(valid, 400u);
}

TEST(Backends, ForgedAttestationsRejected) {
  Fixture f;
  Chain outsiders(chain_config(9, 8, 3));
  const auto& bh = f.c.block(2).header;
  ZkProof honest = prove_header(f.c, bh);
  DetRng rng(5);
  std::size_t rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    ZkProof p = honest;
    switch (i % 5) {
      case 0:  // random attestation bytes
        p.attestation.bytes[rng.below(32)] ^= static_cast<std::uint8_t>(1 + rng.below(255));
        break;
      case 1: {  // self-consistent attestation over a bad signature
        ZkStatement s{honest.inputs, honest.witness};
        s.witness.signature = crypto::G1::generator() * crypto::Fr::from_u64(1 + rng.below(1u << 30));
        p = forge_proof(s);
        break;
      }
      case 2: {  // under-weight bitmap
        ZkStatement s{honest.inputs, honest.witness};
        std::fill(s.witness.bitmap.begin(), s.witness.bitmap.end(), false);
        for (std::size_t k = 0; k < 1 + rng.below(5); ++k) s.witness.bitmap[rng.below(8)] = true;
        s.inputs.claimed_weight = s.witness.validators.weight_of(s.witness.bitmap);
        if (s.inputs.threshold.met(s.inputs.claimed_weight, s.witness.validators.total_weight())) {
          s.witness.bitmap[0] = !s.witness.bitmap[0];
          s.inputs.claimed_weight += 1;
        }
        p = forge_proof(s);
        break;
      }
      case 3: {  // commitment opened by a different set
        ZkStatement s{honest.inputs, honest.witness};
        s.witness.validators = outsiders.validator_set(0);
        p = forge_proof(s);
        break;
      }
      case 4:  // transplanted backend tag
        p.backend = Backend::kCounting;
        break;
    }
    if (!verify_proof(p, honest.inputs)) ++rejected;
  }
  EXPECT_EQ(rejected, 1000u);
  EXPECT_TRUE(verify_proof(honest, honest.inputs));
}

TEST(Monitor, YieldsEachReceiptOnceInOrder) {
  Chain c(chain_config(1, 4, 100));
  Monitor empty(c);
  EXPECT_TRUE(empty.poll().empty());
  std::vector<Digest> hs;
  for (std::uint64_t i = 0; i < 10; ++i) {
    hs.push_back(c.submit_tx(asset_tx(1, 2, i)));
    if (i % 3 == 2) c.produce_block(i);
  }
  c.produce_block(20);
  Monitor a(c), b(c);
  auto ea = a.poll();
  auto eb = b.poll();
  ASSERT_EQ(ea.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(ea[i].receipt.tx_hash, hs[i]);
  ASSERT_EQ(eb.size(), ea.size());
  for (std::size_t i = 0; i < ea.size(); ++i) EXPECT_EQ(ea[i].receipt, eb[i].receipt);
  EXPECT_TRUE(a.poll().empty());
  c.submit_tx(asset_tx(1, 2, 99));
  c.produce_block(21);
  EXPECT_EQ(a.poll().size(), 1u);
}

TEST(GenProofs, HonestAndErrors) {
  Fixture f;
  const chain::Block& b = f.c.block(2);
  auto bundle = gen_proofs(f.c, b.header, b.header.receipt_root, b.tx_hashes[0]);
  auto params = params_of(f.c.config());
  auto st = lc::hlc_setup(params, f.c.validator_set(0)).state;
  EXPECT_TRUE(lc::hlc_verify(st, bundle.receipt, bundle.header, bundle.mkl, bundle.zk).accepted);
  EXPECT_THROW(gen_proofs(f.c, b.header, b.header.receipt_root, f.c.block(1).tx_hashes[0]), Error);
  EXPECT_THROW(gen_proofs(f.c, b.header, Digest{}, b.tx_hashes[0]), Error);

  chain::BlockHeader weak = b.header;
  maprelay::testing::resign(f.c, weak, f.c.validator_set(0),
                            maprelay::testing::bits({1, 1, 1, 0, 0, 0, 0, 0}));
  try {
    prove_header(f.c, weak, Backend::kCounting);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProveRefused);
  }
}

TEST(Transmit, BusOrderingAndUnknownTarget) {
  MessageBus bus;
  bus.register_target(7);
  EXPECT_THROW(bus.register_target(7), Error);
  RelayMessage m;
  m.target = 7;
  m.prover = 1;
  bus.transmit(m, 5);
  m.prover = 2;
  bus.transmit(m, 3);
  m.prover = 3;
  bus.transmit(m, 5);
  EXPECT_TRUE(bus.take_ready(7, 2).empty());
  auto r = bus.take_ready(7, 5);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].prover, 2u);
  EXPECT_EQ(r[1].prover, 1u);
  EXPECT_EQ(r[2].prover, 3u);
  m.target = 8;
  try {
    bus.transmit(m, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownTarget);
  }
}
