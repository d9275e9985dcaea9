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
#include <string>
#include <vector>

#include "json.hpp"
#include "maprelay/harness/runner.hpp"

namespace maprelay::harness {

struct LivenessVariant {
  std::string name = "control";
  std::size_t provers = 2;
  std::size_t silent = 1;
  // Withholding share of RC stake.
  std::uint64_t rc_num = 0;
  std::uint64_t rc_den = 1;
  std::uint64_t ctx_count = 50;
};

struct LivenessVerdict {
  std::string name;
  int fault_case = 0;  // 0 control, 1 no honest prover, 2 withholding stake
  bool expected_live = true;
  bool live = false;
  std::uint64_t submitted = 0;
  std::uint64_t confirmed = 0;
  std::uint64_t stalled = 0;
  std::uint64_t rc_withheld_blocks = 0;
  bool as_expected() const { return live == expected_live; }
  nlohmann::json to_json() const;
};

// Runs the scenario's workload with the variant's prover roster and RC
// withholding. Liveness is expected iff some prover is honest and the
// withholding share is below 1/3.
LivenessVerdict attack_liveness(const Scenario& base, const LivenessVariant& v);

enum class Forgery {
  kPayloadMutation,
  kProofReuse,
  kHeaderForgery,
  kStaleEpochReplay,
  kBitmapInflation,
};
std::string_view to_string(Forgery f);
inline constexpr Forgery kAllForgeries[] = {Forgery::kPayloadMutation, Forgery::kProofReuse,
                                           Forgery::kHeaderForgery, Forgery::kStaleEpochReplay,
                                           Forgery::kBitmapInflation};

struct ConsistencyVariant {
  std::uint64_t forgeries = 1000;
  std::uint64_t honest_ctx = 40;
  std::uint64_t bus_percent = 10;  // share injected through the message bus
  std::uint64_t seed = 7;
};

struct ForgeryTally {
  std::uint64_t attempted = 0;
  std::uint64_t accepted = 0;
  std::uint64_t via_bus = 0;
  std::map<std::string, std::uint64_t> rejections;
};

struct ConsistencyReport {
  std::map<Forgery, ForgeryTally> by_kind;
  std::uint64_t attempted = 0;
  std::uint64_t accepted = 0;
  std::uint64_t unbacked = 0;  // unbacked final confirmations after the run
  bool benign_duplicate_idempotent = false;
  std::uint64_t largest_coalition_percent = 0;  // largest signing coalition seen, percent of stake
  bool held() const { return accepted == 0 && unbacked == 0 && benign_duplicate_idempotent; }
  nlohmann::json to_json() const;
};

// Settles an honest workload (plus one tampering prover), then throws the
// forgery corpus at RC and every destination. Colluding coalitions stay
// strictly below 2/3 of the signing stake.
ConsistencyReport attack_consistency(const Scenario& base, const ConsistencyVariant& v);

struct CollusionReport {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  chain::ChainId dest = 0;
  bool forged_accepted = false;
  std::string verdict;
  bool unbacked_detected = false;
  nlohmann::json to_json() const;
};

// A coalition of num/den of RC stake signs an RC header carrying an
// intermediate record nobody submitted, and hands it to a destination.
CollusionReport attack_collusion(const Scenario& base, std::uint64_t num, std::uint64_t den);

struct AttackSuite {
  std::vector<LivenessVerdict> liveness;
  ConsistencyReport consistency;
  CollusionReport collusion_below;  // 3/5 of RC stake
  CollusionReport collusion_above;  // 7/10 of RC stake
  // Both liveness cases and both consistency cases were exercised.
  bool covers_all_cases() const;
  bool all_as_expected() const;
  nlohmann::json to_json() const;
};

AttackSuite attack_suite(const Scenario& base, const ConsistencyVariant& cv = {});

}  // namespace maprelay::harness
