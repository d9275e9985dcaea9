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
#include "maprelay/relay/network.hpp"
#include "support/fixtures.hpp"

using namespace maprelay;
using namespace maprelay::relay;
using maprelay::testing::asset_tx;
using maprelay::testing::chain_config;

namespace {

constexpr chain::ChainId kRc = 1000;

std::unique_ptr<Network> make_network(std::size_t chains, std::uint64_t epoch_size = 3,
                                      std::size_t provers = 1) {
  auto net = std::make_unique<Network>(chain_config(kRc, 4, epoch_size));
  for (std::size_t i = 1; i <= chains; ++i) {
    auto cfg = chain_config(i, 4, epoch_size);
    cfg.rotation.kind = chain::RotationKind::kSeededShuffle;
    cfg.rotation.extra_candidates = 2;
    net->add_chain(cfg);
  }
  for (std::size_t p = 1; p <= provers; ++p) net->add_prover({p});
  return net;
}

chain::CrossChainTx message_tx(chain::ChainId from, chain::ChainId to, std::uint64_t nonce) {
  chain::CrossChainTx tx;
  tx.origin_chain = from;
  tx.dest_chain = to;
  tx.nonce = nonce;
  tx.payload = chain::MessagePayload{Bytes{0xca, 0xfe, static_cast<std::uint8_t>(nonce)}};
  return tx;
}

// Source block containing tx, with its Merkle and zk proofs.
struct SourceFixture {
  chain::Chain sc{chain_config(1, 4, 100)};
  RelayChain rc{chain_config(kRc, 4, 100)};
  std::vector<chain::CrossChainTx> txs;
  SourceFixture() {
    rc.register_source(sc.config(), sc.validator_set(0));
    for (std::uint64_t i = 0; i < 3; ++i) {
      txs.push_back(asset_tx(1, 2, i, 100 + i));
      sc.submit_tx(txs.back());
    }
    sc.produce_block(1);
  }
  prover::ProofBundle bundle(std::size_t i) {
    const auto& b = sc.block(1);
    return prover::gen_proofs(sc, b.header, b.header.receipt_root, b.tx_hashes[i]);
  }
};

}  // namespace

TEST(RelayChain, RegisterSources) {
  RelayChain rc(chain_config(kRc, 4));
  for (chain::ChainId id = 1; id <= 3; ++id) {
    chain::Chain c(chain_config(id, 5));
    auto gas = rc.register_source(c.config(), c.validator_set(0));
    EXPECT_EQ(gas.total, 100'000u);
  }
  EXPECT_EQ(rc.lc_count(), 3u);
  chain::Chain dup(chain_config(2, 5));
  EXPECT_THROW(rc.register_source(dup.config(), dup.validator_set(0)), Error);
  EXPECT_THROW(rc.lc(9), Error);
  EXPECT_EQ(rc.chain().config().mode, chain::HeaderMode::kCommitted);
}

TEST(RelayChain, ReceiveHonestTamperedAndMismatched) {
  SourceFixture f;
  auto b0 = f.bundle(0);
  auto b1 = f.bundle(1);

  auto tampered = f.txs[0];
  std::get<chain::AssetPayload>(tampered.payload).amount += 1;
  EXPECT_EQ(f.rc.relay_receive(tampered, b0.header, b0.mkl, b0.zk).rejection,
            lc::Rejection::kMerkleFail);
  EXPECT_FALSE(f.rc.relay_receive(f.txs[0], b1.header, b1.mkl, b1.zk).ok());
  EXPECT_EQ(f.rc.chain().pending(), 0u);
  EXPECT_TRUE(f.rc.ledger().empty());

  auto r = f.rc.relay_receive(f.txs[0], b0.header, b0.mkl, b0.zk);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r.duplicate);
  auto again = f.rc.relay_receive(f.txs[0], b0.header, b0.mkl, b0.zk);
  EXPECT_TRUE(again.duplicate);
  EXPECT_EQ(f.rc.chain().pending(), 1u);

  auto blk = f.rc.chain().produce_block(1);
  auto confirmed = f.rc.on_block(*blk);
  ASSERT_EQ(confirmed.size(), 1u);
  EXPECT_EQ(confirmed[0].ctx.payload_bytes(), f.txs[0].payload_bytes());
  EXPECT_TRUE(f.rc.is_confirmed(chain::key_of(f.txs[0])));

  auto stranger = asset_tx(5, 2, 0);
  EXPECT_THROW(f.rc.relay_receive(stranger, b0.header, b0.mkl, b0.zk), Error);
}

TEST(RcClient, FinalConfirmationIdempotentAndForgery) {
  SourceFixture f;
  auto b0 = f.bundle(0);
  ASSERT_TRUE(f.rc.relay_receive(f.txs[0], b0.header, b0.mkl, b0.zk).ok());
  auto blk = f.rc.chain().produce_block(1);
  f.rc.on_block(*blk);
  const IntermediateCtx& x = *f.rc.find(chain::key_of(f.txs[0]));
  auto rcb = prover::gen_proofs(f.rc.chain(), blk->header, blk->header.receipt_root,
                                blk->tx_hashes[0]);

  RcClient dc(2, f.rc);
  auto r = dc.dest_receive(x, rcb.header, rcb.mkl, rcb.zk);
  ASSERT_TRUE(r.ok()) << lc::to_string(r.rejection);
  EXPECT_TRUE(dc.is_confirmed(x.key()));
  EXPECT_EQ(dc.confirmed().at(x.key()).payload, f.txs[0].payload_bytes());
  EXPECT_TRUE(dc.dest_receive(x, rcb.header, rcb.mkl, rcb.zk).duplicate);
  EXPECT_EQ(dc.confirmed().size(), 1u);

  // A record RC never confirmed.
  IntermediateCtx forged = x;
  forged.ctx = f.txs[1];
  EXPECT_FALSE(dc.dest_receive(forged, rcb.header, rcb.mkl, rcb.zk).ok());
  EXPECT_FALSE(dc.is_confirmed(forged.key()));

  RcClient wrong_host(3, f.rc);
  EXPECT_EQ(wrong_host.dest_receive(x, rcb.header, rcb.mkl, rcb.zk).rejection,
            lc::Rejection::kWrongChain);
}

TEST(Deployment, PlanFormulas) {
  auto p3 = deployment_plan(3, Topology::kPairwise);
  EXPECT_EQ(p3.lc_instances, 6u);
  EXPECT_EQ(p3.deployment_gas, 60'000'000u);
  auto r3 = deployment_plan(3, Topology::kRelayed);
  EXPECT_EQ(r3.lc_instances, 6u);
  EXPECT_EQ(r3.deployment_gas, 600'000u);
  auto p10 = deployment_plan(10, Topology::kPairwise);
  auto r10 = deployment_plan(10, Topology::kRelayed);
  EXPECT_EQ(p10.lc_instances, 90u);
  EXPECT_EQ(r10.lc_instances, 20u);
  EXPECT_EQ(p10.deployment_gas, 900'000'000u);
  EXPECT_EQ(r10.deployment_gas, 2'000'000u);
  EXPECT_THROW(deployment_plan(1, Topology::kRelayed), Error);
  for (std::uint64_t n = 2; n <= 10; ++n) {
    EXPECT_EQ(deployment_plan(n, Topology::kRelayed).lc_instances, 2 * n);
    EXPECT_EQ(deployment_plan(n, Topology::kPairwise).lc_instances / n, n - 1);
  }
}

TEST(Network, EndToEndHundredMixed) {
  auto net = make_network(3);
  std::vector<chain::CtxKey> keys;
  for (std::uint64_t i = 0; i < 100; ++i) {
    chain::ChainId from = 1 + i % 3, to = 1 + (i + 1 + i / 3 % 2) % 3;
    auto tx = i % 2 ? message_tx(from, to, net->next_nonce(from))
                    : asset_tx(from, to, net->next_nonce(from), 10 * i);
    keys.push_back(net->submit(tx));
    if (i % 10 == 9) net->tick();
  }
  ASSERT_TRUE(net->run_until_settled(net->options().horizon_ticks));
  EXPECT_TRUE(net->unbacked_confirmations().empty());
  for (const auto& k : keys) {
    auto ev = net->events_of(k);
    std::vector<std::uint64_t> times;
    for (Stage s : kPipeline) {
      auto it = std::find_if(ev.begin(), ev.end(),
                             [&](const TraceEvent& e) { return e.stage == s && e.verdict == "ok"; });
      ASSERT_NE(it, ev.end()) << k.str() << " " << to_string(s);
      times.push_back(it->time);
    }
    for (std::size_t i = 1; i < times.size(); ++i) EXPECT_LT(times[i - 1], times[i]) << k.str();
  }
  // Epoch transitions happened along the way on every chain.
  for (auto id : net->chain_ids()) EXPECT_GE(net->chain(id).epoch(), 2u);
  EXPECT_GE(net->rc().lc(1).epoch, 1u);
}

TEST(Network, NoSpontaneousConfirmation) {
  auto net = make_network(2, 4, 2);
  for (std::uint64_t i = 0; i < 20; ++i) net->submit(asset_tx(1 + i % 2, 2 - i % 2, i / 2));
  ASSERT_TRUE(net->run_until_settled(70));
  std::map<chain::CtxKey, std::uint64_t> sc, rc;
  for (const auto& e : net->trace()) {
    if (e.stage == Stage::kConfirmSc) sc.emplace(e.key, e.time);
    if (e.stage == Stage::kConfirmRc) {
      ASSERT_TRUE(sc.count(e.key));
      EXPECT_LT(sc.at(e.key), e.time);
      rc.emplace(e.key, e.time);
    }
    if (e.stage == Stage::kConfirmDc) {
      ASSERT_TRUE(rc.count(e.key));
      EXPECT_LT(rc.at(e.key), e.time);
    }
  }
  // Two provers deliver everything twice; the second copy is a no-op.
  std::size_t dups = 0;
  for (const auto& e : net->trace()) dups += e.verdict == "duplicate";
  EXPECT_EQ(dups, 40u);
  std::size_t finals = 0;
  for (auto id : net->chain_ids()) finals += net->rc_client(id).confirmed().size();
  EXPECT_EQ(finals, 20u);
}

TEST(Network, SubmitErrorsAndReverseDirection) {
  Network net(chain_config(kRc, 4));
  net.add_chain(chain_config(1, 4), true, false);
  net.add_chain(chain_config(2, 4), false, true);
  net.add_prover({1});
  EXPECT_THROW(net.submit(asset_tx(1, 3, 0)), Error);
  EXPECT_THROW(net.submit(asset_tx(2, 1, 0)), Error);  // 1 is not a destination yet
  auto ev = net.end_to_end_relay(asset_tx(1, 2, 0));
  EXPECT_TRUE(net.submitted().at({1, 0}).confirmed_dc);
  net.register_source(2);
  net.register_dest(1);
  net.end_to_end_relay(asset_tx(2, 1, 0));
  EXPECT_TRUE(net.submitted().at({2, 0}).confirmed_dc);
  EXPECT_THROW(net.add_prover({1}), Error);
}

TEST(Network, TamperingProverNeverConfirmsForgery) {
  auto net = make_network(2, 3, 0);
  net->add_prover({1, ProverFault::kTampering});
  net->add_prover({2, ProverFault::kHonest});
  for (std::uint64_t i = 0; i < 10; ++i) net->submit(asset_tx(1, 2, i));
  ASSERT_TRUE(net->run_until_settled(70));
  EXPECT_TRUE(net->unbacked_confirmations().empty());
  std::size_t rejected = 0;
  for (const auto& e : net->trace()) {
    if (e.prover == 1 && (e.stage == Stage::kVerifyRc || e.stage == Stage::kVerifyDc)) {
      EXPECT_NE(e.verdict, "ok");
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0u);
}

TEST(Network, SilentProversStall) {
  auto net = make_network(2, 3, 0);
  net->add_prover({1, ProverFault::kSilent});
  net->submit(asset_tx(1, 2, 0));
  EXPECT_FALSE(net->run_until_settled(70));
  EXPECT_EQ(net->stalled().size(), 1u);
}

TEST(Network, DeterministicTrace) {
  auto run = [] {
    auto net = make_network(3, 3, 2);
    for (std::uint64_t i = 0; i < 15; ++i) {
      net->submit(asset_tx(1 + i % 3, 1 + (i + 1) % 3, i / 3, i));
      net->tick();
    }
    net->run_until_settled(70);
    return net->trace_jsonl();
  };
  std::string a = run();
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, run());
}
