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
#include "maprelay/mos/service.hpp"
#include "support/fixtures.hpp"

using namespace maprelay;
using namespace maprelay::mos;
using maprelay::testing::chain_config;

namespace {

constexpr chain::ChainId kRc = 1000;

std::unique_ptr<relay::Network> make_network(std::size_t provers = 1) {
  auto net = std::make_unique<relay::Network>(chain_config(kRc, 4, 5));
  for (chain::ChainId i = 1; i <= 3; ++i) net->add_chain(chain_config(i, 4, 5));
  for (std::size_t p = 1; p <= provers; ++p) net->add_prover({p});
  return net;
}

chain::Payload asset(std::uint64_t amount) {
  return chain::AssetPayload{"USDC", amount, "transfer"};
}

}  // namespace

// Values from exact rational arithmetic in Python.
TEST(Pricing, FrozenValues) {
  PricingConfig c;
  const std::pair<std::uint64_t, std::uint64_t> v[] = {
      {0, 2},        {80, 2},       {81, 2},       {100, 3},      {140, 4},     {1000, 25},
      {39979, 999},  {39999, 1000}, {40000, 1000}, {40001, 1000}, {1000000000000, 1000}};
  for (auto [a, f] : v) EXPECT_EQ(compute_fee(a, c), f) << a;

  PricingConfig d{3, 7, 4, 6, 500};
  const std::pair<std::uint64_t, std::uint64_t> w[] = {
      {0, 10}, {23, 10}, {24, 10}, {25, 11}, {26, 11}, {1166, 500}, {1168, 500}, {1000000000, 500}};
  for (auto [a, f] : w) EXPECT_EQ(compute_fee(a, d), f) << a;
}

TEST(Pricing, MonotoneAndBoundedOverRandomConfigs) {
  DetRng rng(77);
  for (int i = 0; i < 10000; ++i) {
    PricingConfig c;
    c.k_den = rng.range(2, 100000);
    c.k_num = rng.range(1, c.k_den - 1);
    c.f_rc = rng.below(1000);
    c.f_dc = rng.below(1000);
    c.f_max = c.f_rc + c.f_dc + rng.below(1u << 20);
    std::uint64_t a = rng.below(1ull << 40);
    std::uint64_t b = a + rng.below(1ull << 30);
    std::uint64_t fa = compute_fee(a, c), fb = compute_fee(b, c);
    ASSERT_LE(fa, fb);
    ASSERT_GE(fa, c.f_rc + c.f_dc);
    ASSERT_LE(fb, c.f_max);
  }
}

TEST(Pricing, RejectsBadConfig) {
  EXPECT_THROW(compute_fee(1, PricingConfig{0, 10, 1, 1, 10}), Error);
  EXPECT_THROW(compute_fee(1, PricingConfig{10, 10, 1, 1, 10}), Error);
  EXPECT_THROW(compute_fee(1, PricingConfig{1, 10, 5, 6, 10}), Error);
  EXPECT_THROW(PricingConfig::from_json({{"k_den", 0}}), Error);
}

TEST(Service, MessageOutErrors) {
  auto net = make_network();
  Service s(*net, {});
  EXPECT_THROW(s.message_out(1, 1, asset(10), 100), Error);
  EXPECT_THROW(s.message_out(1, 42, asset(10), 100), Error);
  try {
    s.message_out(1, 2, asset(10'000), 249);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientFee);
  }
  EXPECT_THROW(s.inquire({1, 0}), Error);
  auto k = s.message_out(1, 2, asset(10'000), 250);
  EXPECT_EQ(s.inquire(k).fee, 250u);
  EXPECT_EQ(s.inquire(k).status, Status::kPendingSc);
}

TEST(Service, StatusesFollowPipelineMonotonically) {
  auto net = make_network();
  Service s(*net, {});
  std::vector<chain::CtxKey> keys;
  for (std::uint64_t i = 0; i < 12; ++i) {
    chain::ChainId from = 1 + i % 3, to = 1 + (i + 1) % 3;
    chain::Payload p = i % 2 ? asset(1000 * i) : chain::Payload{chain::MessagePayload{Bytes{1, 2}}};
    keys.push_back(s.message_out(from, to, p, 1000));
  }
  std::map<chain::CtxKey, Status> last;
  net->on_event([&](const relay::TraceEvent&) {
    for (const auto& k : keys) {
      Status now = s.inquire(k).status;
      auto it = last.find(k);
      if (it != last.end()) {
        ASSERT_GE(static_cast<int>(now), static_cast<int>(it->second));
      }
      last[k] = now;
    }
  });
  ASSERT_TRUE(net->run_until_settled(200));
  for (const auto& k : keys) {
    auto r = s.inquire(k);
    EXPECT_EQ(r.status, Status::kConfirmedDc);
    ASSERT_TRUE(r.times.count(Status::kPendingSc));
    EXPECT_LT(r.times[Status::kPendingSc], r.times[Status::kConfirmedSc]);
    EXPECT_LT(r.times[Status::kConfirmedSc], r.times[Status::kConfirmedRc]);
    EXPECT_LT(r.times[Status::kConfirmedRc], r.times[Status::kConfirmedDc]);
    EXPECT_TRUE(r.rejections.empty());
  }
}

TEST(Service, TamperedDeliveriesLoggedWithoutRegress) {
  auto net = make_network(0);
  net->add_prover({1});
  net->add_prover({2, relay::ProverFault::kTampering});
  Service s(*net, {});
  auto k = s.message_out(1, 3, asset(500), 100);
  ASSERT_TRUE(net->run_until_settled(200));
  auto r = s.inquire(k);
  EXPECT_EQ(r.status, Status::kConfirmedDc);
  EXPECT_FALSE(r.rejections.empty());
}

TEST(Service, JournalReplayRebuildsStore) {
  auto net = make_network();
  Service s(*net, {});
  for (std::uint64_t i = 0; i < 5; ++i) s.message_out(1, 2, asset(100 * i), 100);
  net->tick();
  net->tick();
  std::string text = s.store().journal_text();
  RecordStore back = RecordStore::replay(text);
  ASSERT_EQ(back.records().size(), s.store().records().size());
  for (const auto& [k, r] : s.store().records()) {
    const MessageRecord* b = back.find(k);
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->status, r.status);
    EXPECT_EQ(b->fee, r.fee);
    EXPECT_EQ(b->times, r.times);
  }
  EXPECT_EQ(back.journal_text(), text);
  EXPECT_THROW(RecordStore::replay(text + "{not json\n"), Error);
}

TEST(Service, MessageInDirectDelivery) {
  auto net = make_network(0);
  Service s(*net, {});
  auto k = s.message_out(1, 2, asset(700), 100);
  net->tick();
  const auto& sc = net->chain(1);
  const chain::CrossChainTx& ctx = net->submitted().at(k).ctx;
  auto conf = sc.confirm(ctx.hash(sc.config().hash));
  auto pb = prover::gen_proofs(sc, conf.header, conf.receipt_root, ctx.hash(sc.config().hash));
  ReceiptProofBundle b{pb.header, pb.receipt, pb.mkl, pb.zk};
  Bytes wire = b.serialize();
  EXPECT_EQ(ReceiptProofBundle::deserialize(wire).serialize(), wire);

  ReceiptProofBundle bad = b;
  bad.header.receipt_root.bytes[0] ^= 1;
  auto rej = s.message_in(kRc, 1, bad.serialize());
  EXPECT_FALSE(rej.reason.empty());
  EXPECT_EQ(s.inquire(k).status, Status::kConfirmedSc);
  EXPECT_EQ(s.inquire(k).rejections.size(), 1u);

  auto in = s.message_in(kRc, 1, wire);
  EXPECT_EQ(in.status, Status::kConfirmedRc);
  EXPECT_EQ(in.converted, relay::ictx_key(k, net->rc().chain().config().hash));
  EXPECT_TRUE(s.message_in(kRc, 1, wire).duplicate);

  EXPECT_EQ(s.inquire(k).status, Status::kConfirmedRc);

  EXPECT_EQ(s.message_in(kRc, 1, Bytes{1, 2, 3}).reason, "malformed");
}
