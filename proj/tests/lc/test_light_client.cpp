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
#include "maprelay/crypto/counters.hpp"
#include "maprelay/lc/light_client.hpp"
#include "support/fixtures.hpp"
#include "support/lc_helpers.hpp"

using namespace maprelay;
using namespace maprelay::lc;
using chain::Chain;
using maprelay::testing::asset_tx;
using maprelay::testing::chain_config;

namespace {

// Block 1 of a fresh chain with k ctx in it.
Chain chain_with_block(chain::ChainId id, std::size_t n, std::size_t k, std::uint64_t epoch_size = 10) {
  Chain c(chain_config(id, n, epoch_size));
  for (std::size_t i = 0; i < k; ++i) c.submit_tx(asset_tx(id, id + 1, i, 10 * i + 1));
  c.produce_block(1);
  return c;
}

struct Pair {
  NormalLcState normal;
  HybridLcState hybrid;
};

Pair setup_both(const Chain& c) {
  auto p = prover::params_of(c.config());
  return {lc_setup(p, c.validator_set(0)).state, hlc_setup(p, c.validator_set(0)).state};
}

// Gas of a normal verify from the table, for a set of n all signing and a
// Merkle path of the given depth.
std::uint64_t normal_verify_formula(const GasCostTable& t, std::uint64_t n, std::uint64_t depth) {
  return t.storage_read_word * (t.lc_state_words + n * t.validator_entry_words) +
         t.hash * (1 + kHashToBaseHashes) + t.g2_add * (n - 1) + t.field_exp * kBaseToGFieldExps +
         t.g1_add + t.pairing_base + 2 * t.pairing_per_pair + t.hash + t.merkle_level * depth;
}

std::uint64_t hybrid_verify_formula(const GasCostTable& t, std::uint64_t depth) {
  return t.storage_read_word * (t.lc_state_words + t.commitment_record_words) +
         t.hash * (1 + kHashToBaseHashes) + t.snark_verify_fixed + 7 * t.snark_public_input + t.hash +
         t.merkle_level * depth;
}

}  // namespace

TEST(LcSetup, StorageGas) {
  Chain c100(chain_config(1, 100));
  auto p = prover::params_of(c100.config());
  EXPECT_EQ(lc_setup(p, c100.validator_set(0)).gas.total, 10'000'000u);
  EXPECT_EQ(hlc_setup(p, c100.validator_set(0)).gas.total, 100'000u);
  Chain c1(chain_config(2, 1));
  EXPECT_EQ(lc_setup(prover::params_of(c1.config()), c1.validator_set(0)).gas.total, 100'000u);
  EXPECT_EQ(hlc_setup(prover::params_of(c1.config()), c1.validator_set(0)).gas.total, 100'000u);
  EXPECT_THROW(lc_setup(p, crypto::ValidatorSet{}), Error);
  EXPECT_THROW(hlc_setup(p, crypto::ValidatorSet{}), Error);
}

TEST(LcSetup, HybridSetupIndependentOfN) {
  Chain c10(chain_config(1, 10));
  Chain c1000(chain_config(2, 1000));
  auto a = hlc_setup(prover::params_of(c10.config()), c10.validator_set(0)).gas;
  auto b = hlc_setup(prover::params_of(c1000.config()), c1000.validator_set(0)).gas;
  EXPECT_EQ(a.total, b.total);
  EXPECT_EQ(lc_setup(prover::params_of(c1000.config()), c1000.validator_set(0)).gas.total,
            1000u * 100'000u);
}

TEST(LcVerify, GasAnchorsAt100Validators) {
  // 16 receipts -> Merkle depth 4.
  Chain c = chain_with_block(1, 100, 16);
  Pair s = setup_both(c);
  const auto& b = c.block(1);
  auto conf = c.confirm(b.tx_hashes[5]);
  auto zk = prover::prove_header(c, conf.header);
  auto n = lc_verify(s.normal, conf.receipt, conf.header, conf.proof);
  auto h = hlc_verify(s.hybrid, conf.receipt, conf.header, conf.proof, zk);
  ASSERT_TRUE(n.accepted) << to_string(n.rejection);
  ASSERT_TRUE(h.accepted) << to_string(h.rejection);
  GasCostTable t;
  EXPECT_EQ(n.gas.total, normal_verify_formula(t, 100, 4));
  EXPECT_EQ(h.gas.total, hybrid_verify_formula(t, 4));
  EXPECT_NEAR(static_cast<double>(n.gas.total), 1.0e6, 0.1e6);
  EXPECT_NEAR(static_cast<double>(h.gas.total), 0.65e6, 0.065e6);
  EXPECT_LE(static_cast<double>(h.gas.total) / static_cast<double>(n.gas.total), 0.70);
}

TEST(LcVerify, TamperedReceiptAndWrongLeaf) {
  Chain c = chain_with_block(1, 4, 3);
  Pair s = setup_both(c);
  const auto& b = c.block(1);
  auto conf = c.confirm(b.tx_hashes[0]);
  auto other = c.confirm(b.tx_hashes[1]);
  auto zk = prover::prove_header(c, conf.header);
  auto m = conf.receipt;
  m.event.back() ^= 1;
  EXPECT_EQ(lc_verify(s.normal, m, conf.header, conf.proof).rejection, Rejection::kMerkleFail);
  EXPECT_EQ(hlc_verify(s.hybrid, m, conf.header, conf.proof, zk).rejection, Rejection::kMerkleFail);
  auto r1 = lc_verify(s.normal, conf.receipt, conf.header, other.proof);
  EXPECT_FALSE(r1.accepted);
  EXPECT_FALSE(hlc_verify(s.hybrid, conf.receipt, conf.header, other.proof, zk).accepted);
  EXPECT_TRUE(lc_verify(s.normal, other.receipt, other.header, other.proof).accepted);
}

TEST(LcUpdate, NormalRejectionReasons) {
  Chain c(chain_config(1, 4, 2));
  for (std::uint64_t t = 1; t <= 4; ++t) c.produce_block(t);
  Pair s = setup_both(c);
  chain::BlockHeader b2 = c.block(2).header;
  chain::BlockHeader b4 = c.block(4).header;

  auto ok = lc_update(s.normal, b2);
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok.state.epoch, 1u);

  EXPECT_EQ(lc_update(s.normal, b4).rejection, Rejection::kEpochGap);
  EXPECT_EQ(lc_update(ok.state, b2).rejection, Rejection::kEpochGap);  // replay
  EXPECT_EQ(lc_update(s.normal, c.block(1).header).rejection, Rejection::kMalformed);

  auto weak = b2;
  maprelay::testing::resign(c, weak, c.validator_set(0), maprelay::testing::bits({1, 1, 0, 0}));
  EXPECT_EQ(lc_update(s.normal, weak).rejection, Rejection::kInsufficientWeight);

  auto inflated = weak;
  inflated.signature.bitmap = crypto::Bitmap(4, true);
  EXPECT_EQ(lc_update(s.normal, inflated).rejection, Rejection::kBadSignature);

  auto wrong = b2;
  wrong.chain_id = 9;
  EXPECT_EQ(lc_update(s.normal, wrong).rejection, Rejection::kWrongChain);

  auto rejected = lc_update(s.normal, inflated);
  EXPECT_EQ(rejected.state.epoch, 0u);
  EXPECT_EQ(rejected.state.validators, s.normal.validators);
}

TEST(LcUpdate, HybridAdvancesAndBinds) {
  chain::ChainConfig cfg = chain_config(1, 4, 2);
  cfg.rotation.kind = chain::RotationKind::kSeededShuffle;
  cfg.rotation.extra_candidates = 4;
  Chain c(cfg);
  for (std::uint64_t t = 1; t <= 4; ++t) c.produce_block(t);
  Pair s = setup_both(c);
  const auto& b2 = c.block(2).header;
  auto zk2 = prover::prove_header(c, b2);
  auto up = hlc_update(s.hybrid, b2, zk2);
  ASSERT_TRUE(up.ok()) << to_string(up.rejection);
  EXPECT_EQ(up.state.epoch, 1u);
  EXPECT_EQ(up.state.commitment.digest, crypto::commit_validator_set(c.validator_set(1)).digest);

  // Proof for block 4 presented with block 2.
  auto zk4 = prover::prove_header(c, c.block(4).header);
  EXPECT_EQ(hlc_update(s.hybrid, b2, zk4).rejection, Rejection::kPublicInputMismatch);
  EXPECT_EQ(hlc_update(up.state, c.block(4).header, zk2).rejection, Rejection::kPublicInputMismatch);
  EXPECT_EQ(hlc_update(s.hybrid, c.block(4).header, zk4).rejection, Rejection::kEpochGap);
  EXPECT_TRUE(hlc_update(up.state, c.block(4).header, zk4).ok());
}

TEST(LcUpdate, UnderweightProofRefusedByBothBackends) {
  Chain c(chain_config(1, 4, 2));
  for (std::uint64_t t = 1; t <= 2; ++t) c.produce_block(t);
  Pair s = setup_both(c);
  auto weak = c.block(2).header;
  maprelay::testing::resign(c, weak, c.validator_set(0), maprelay::testing::bits({0, 1, 1, 0}));
  for (auto backend : {prover::Backend::kTransparent, prover::Backend::kCounting}) {
    try {
      prover::prove_header(c, weak, backend);
      ADD_FAILURE() << "prove should refuse";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kProveRefused);
    }
    auto forged = maprelay::testing::forge_proof(prover::header_statement(c, weak), backend);
    EXPECT_EQ(hlc_update(s.hybrid, weak, forged).rejection, Rejection::kProofInvalid);
  }
}

TEST(LcVerify, HybridPerturbationSweep) {
  Chain c = chain_with_block(1, 5, 6);
  Pair s = setup_both(c);
  auto conf = c.confirm(c.block(1).tx_hashes[2]);
  auto zk = prover::prove_header(c, conf.header);
  ASSERT_TRUE(hlc_verify(s.hybrid, conf.receipt, conf.header, conf.proof, zk).accepted);

  auto m = conf.receipt;
  m.height += 1;
  EXPECT_FALSE(hlc_verify(s.hybrid, m, conf.header, conf.proof, zk).accepted);

  auto bh = conf.header;
  bh.receipt_root.bytes[0] ^= 1;
  EXPECT_EQ(hlc_verify(s.hybrid, conf.receipt, bh, conf.proof, zk).rejection,
            Rejection::kPublicInputMismatch);

  auto mkl = conf.proof;
  mkl.path[0].sibling.bytes[3] ^= 1;
  EXPECT_EQ(hlc_verify(s.hybrid, conf.receipt, conf.header, mkl, zk).rejection,
            Rejection::kMerkleFail);

  for (std::size_t byte : {0u, 7u, 31u}) {
    auto bad = zk;
    bad.attestation.bytes[byte] ^= 0x40;
    EXPECT_EQ(hlc_verify(s.hybrid, conf.receipt, conf.header, conf.proof, bad).rejection,
              Rejection::kProofInvalid);
  }
  auto bad_w = zk;
  bad_w.inputs.claimed_weight += 1;
  EXPECT_FALSE(hlc_verify(s.hybrid, conf.receipt, conf.header, conf.proof, bad_w).accepted);

  auto st = s.hybrid;
  st.commitment.digest.bytes[0] ^= 1;
  EXPECT_EQ(hlc_verify(st, conf.receipt, conf.header, conf.proof, zk).rejection,
            Rejection::kPublicInputMismatch);
  EXPECT_EQ(hlc_verify(st, conf.receipt, conf.header, conf.proof,
                       maprelay::testing::forge_proof(
                           {lc::statement_inputs(st.params, st.commitment, conf.header,
                                                 zk.inputs.claimed_weight),
                            zk.witness}))
                .rejection,
            Rejection::kProofInvalid);
}

// Randomized workloads with rotations. Each workload verifies one receipt
// against both clients, optionally after corrupting the header or receipt.
TEST(LcEquivalence, NormalAndHybridAgree) {
  std::size_t workloads = 0, accepted = 0;
  DetRng rng(2024);
  const chain::RotationKind kinds[] = {chain::RotationKind::kIdentity,
                                       chain::RotationKind::kSeededShuffle,
                                       chain::RotationKind::kStakeDecay};
  for (std::uint64_t round = 0; round < 30; ++round) {
    chain::ChainConfig cfg = chain_config(100 + round, 1 + rng.below(6), 2 + rng.below(3));
    for (auto& v : cfg.validators) v.weight = 1 + rng.below(50);
    cfg.rotation.kind = kinds[round % 3];
    cfg.rotation.extra_candidates = 3;
    cfg.rotation.decay_percent = 40;
    Chain c(cfg);
    std::uint64_t nonce = 0;
    for (std::uint64_t t = 1; t <= 9; ++t) {
      std::uint64_t k = rng.below(5);
      for (std::uint64_t i = 0; i < k; ++i) c.submit_tx(asset_tx(c.id(), 1, nonce++, rng.below(1000)));
      c.produce_block(t);
    }
    Pair s = setup_both(c);
    // Replay epochs, verifying receipts of each epoch along the way.
    for (std::uint64_t h = 1; h <= c.height(); ++h) {
      const chain::Block& b = c.block(h);
      if (b.header.is_transition()) {
        auto u = lc_update(s.normal, b.header);
        auto hu = hlc_update(s.hybrid, b.header, prover::prove_header(c, b.header));
        ASSERT_EQ(u.ok(), hu.ok());
        s.normal = u.state;
        s.hybrid = hu.state;
        continue;
      }
      for (const auto& txh : b.tx_hashes) {
        auto conf = c.confirm(txh);
        chain::ReceiptMessage m = conf.receipt;
        chain::BlockHeader bh = conf.header;
        crypto::MerkleProof mkl = conf.proof;
        switch (rng.below(6)) {
          case 0: m.event[rng.below(m.event.size())] ^= 1; break;
          case 1: {
            crypto::Bitmap sub = bh.signature.bitmap;
            for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = rng.chance(1, 2);
            maprelay::testing::resign(c, bh, c.validator_set(bh.epoch), sub);
            break;
          }
          case 2: bh.signature.point = bh.signature.point + crypto::G1::generator(); break;
          default: break;
        }
        auto n = lc_verify(s.normal, m, bh, mkl);
        auto hy = hlc_verify(s.hybrid, m, bh, mkl, maprelay::testing::any_proof(c, bh));
        EXPECT_EQ(n.accepted, hy.accepted) << "workload " << workloads;
        ++workloads;
        accepted += n.accepted;
      }
    }
  }
  EXPECT_GE(workloads, 500u);
  EXPECT_GT(accepted, workloads / 4);
  EXPECT_LT(accepted, workloads);
}

TEST(LcGas, UpdateLinearNormalConstantHybrid) {
  std::vector<std::uint64_t> normal, hybrid;
  const std::uint64_t ns[] = {4, 16, 64, 256};
  for (std::uint64_t n : ns) {
    Chain c(chain_config(n, n, 2));
    c.produce_block(1);
    c.produce_block(2);
    Pair s = setup_both(c);
    const auto& bh = c.block(2).header;
    auto u = lc_update(s.normal, bh);
    auto h = hlc_update(s.hybrid, bh, prover::prove_header(c, bh));
    ASSERT_TRUE(u.ok());
    ASSERT_TRUE(h.ok());
    normal.push_back(u.gas.total);
    hybrid.push_back(h.gas.total);
  }
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(hybrid[i], hybrid[0]);
  // Equal per-validator slope between consecutive sizes.
  std::uint64_t slope = (normal[1] - normal[0]) / (ns[1] - ns[0]);
  EXPECT_GT(slope, 0u);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(normal[i] - normal[i - 1], slope * (ns[i] - ns[i - 1]));
  }
}

// Every (claimed bitmap, actual signers) pair over a 4-member set, plus
// outsiders and skipped epochs. No header advances a client unless the
// actual signers from the stored set carry threshold weight.
TEST(LcEpochSafety, ExhaustiveSmallCorpus) {
  chain::ChainConfig cfg = chain_config(1, 4, 2);
  std::uint64_t ws[] = {10, 20, 30, 40};
  for (std::size_t i = 0; i < 4; ++i) cfg.validators[i].weight = ws[i];
  cfg.rotation.kind = chain::RotationKind::kSeededShuffle;
  cfg.rotation.extra_candidates = 4;
  Chain c(cfg);
  for (std::uint64_t t = 1; t <= 4; ++t) c.produce_block(t);
  Chain outsiders(chain_config(2, 4, 2));
  Pair s = setup_both(c);
  const auto& vs0 = c.validator_set(0);
  std::size_t advanced = 0;
  for (unsigned claimed = 0; claimed < 16; ++claimed) {
    for (unsigned actual = 0; actual < 16; ++actual) {
      chain::BlockHeader bh = c.block(2).header;
      crypto::Bitmap a(4), cl(4);
      for (unsigned i = 0; i < 4; ++i) {
        a[i] = actual >> i & 1;
        cl[i] = claimed >> i & 1;
      }
      maprelay::testing::resign(c, bh, vs0, a);
      bh.signature.bitmap = cl;
      auto u = lc_update(s.normal, bh);
      auto h = hlc_update(s.hybrid, bh, maprelay::testing::any_proof(c, bh));
      bool quorum = c.config().threshold.met(vs0.weight_of(a), vs0.total_weight());
      bool honest = quorum && a == cl && actual != 0;
      EXPECT_TRUE(!u.ok() || honest) << claimed << "/" << actual;
      EXPECT_TRUE(!h.ok() || honest) << claimed << "/" << actual;
      EXPECT_EQ(u.ok(), h.ok()) << claimed << "/" << actual;
      EXPECT_EQ(u.ok(), honest) << claimed << "/" << actual;
      advanced += u.ok();
    }
  }
  EXPECT_GT(advanced, 0u);

  // Outsiders sign with their own keys under the claimed full bitmap.
  chain::BlockHeader fake = c.block(2).header;
  maprelay::testing::resign(outsiders, fake, outsiders.validator_set(0), crypto::Bitmap(4, true));
  fake.signature.bitmap = crypto::Bitmap(4, true);
  EXPECT_FALSE(lc_update(s.normal, fake).ok());
  EXPECT_FALSE(hlc_update(s.hybrid, fake, maprelay::testing::any_proof(c, fake)).ok());

  // Announced set swapped after signing.
  chain::BlockHeader swapped = c.block(2).header;
  swapped.validators = outsiders.validator_set(0).with_epoch(1);
  EXPECT_EQ(lc_update(s.normal, swapped).rejection, Rejection::kBadSignature);
  EXPECT_FALSE(hlc_update(s.hybrid, swapped, maprelay::testing::any_proof(c, swapped)).ok());

  // Stale quorum: the epoch-0 set signs the epoch-2 transition.
  auto n1 = lc_update(s.normal, c.block(2).header).state;
  auto h1 = hlc_update(s.hybrid, c.block(2).header, prover::prove_header(c, c.block(2).header)).state;
  chain::BlockHeader stale = c.block(4).header;
  maprelay::testing::resign(c, stale, vs0, crypto::Bitmap(4, true));
  EXPECT_FALSE(lc_update(n1, stale).ok());
  prover::ZkStatement st = prover::header_statement(c, stale);
  st.inputs.commitment = h1.commitment;
  st.witness.validators = vs0;
  EXPECT_FALSE(hlc_update(h1, stale, maprelay::testing::forge_proof(st)).ok());
  EXPECT_TRUE(lc_update(n1, c.block(4).header).ok());
}

TEST(LcGas, MeteringMatchesInstrumentation) {
  Chain c = chain_with_block(1, 12, 9);
  Pair s = setup_both(c);
  auto conf = c.confirm(c.block(1).tx_hashes[8]);
  auto before = crypto::op_counters();
  auto n = lc_verify(s.normal, conf.receipt, conf.header, conf.proof);
  auto d = crypto::counters_delta(before, crypto::op_counters());
  ASSERT_TRUE(n.accepted);
  EXPECT_EQ(n.gas.count_of("g2_add"), d.g2_adds);
  EXPECT_EQ(n.gas.count_of("pairing_pair"), d.pairing_pairs);
  EXPECT_EQ(n.gas.count_of("pairing_check"), d.pairing_checks);
  EXPECT_EQ(n.gas.count_of("merkle_level"), d.merkle_levels);
  EXPECT_EQ(d.hash_to_base, 1u);
  EXPECT_EQ(d.base_to_g, 1u);

  for (const auto* r : {&n.gas}) {
    std::uint64_t sum = 0;
    for (const auto& i : r->items) {
      EXPECT_EQ(i.cost, i.count * i.unit);
      sum += i.cost;
    }
    EXPECT_EQ(sum, r->total);
  }

  auto zk = prover::prove_header(c, conf.header);
  before = crypto::op_counters();
  auto h = hlc_verify(s.hybrid, conf.receipt, conf.header, conf.proof, zk);
  d = crypto::counters_delta(before, crypto::op_counters());
  ASSERT_TRUE(h.accepted);
  EXPECT_EQ(d.pairing_checks, 0u);  // delegated to the proof
  EXPECT_EQ(d.hash_to_base, 1u);
  EXPECT_EQ(h.gas.count_of("merkle_level"), d.merkle_levels);
  EXPECT_EQ(h.gas.count_of("snark_verify"), 1u);
  auto j = h.gas.to_json();
  EXPECT_EQ(j.at("total").get<std::uint64_t>(), h.gas.total);
  EXPECT_EQ(j.at("op"), "hlc_verify");

  GasCostTable custom = GasCostTable::from_json({{"hash", 100}, {"merkle_level", 1}});
  EXPECT_EQ(custom.hash, 100u);
  EXPECT_EQ(custom.pairing_base, GasCostTable{}.pairing_base);
  auto h2 = hlc_verify(s.hybrid, conf.receipt, conf.header, conf.proof, zk, custom);
  EXPECT_EQ(h2.gas.total, hybrid_verify_formula(custom, conf.proof.path.size()));
}
