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
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "maprelay/economics/security.hpp"
#include "maprelay/harness/scenario.hpp"

namespace maprelay::harness {

// Builds the network of a validated scenario.
std::unique_ptr<relay::Network> build_network(const Scenario& s);

// Members of vs taken, in canonical order, until their weight reaches
// num/den of the total.
crypto::Bitmap corrupted_members(const crypto::ValidatorSet& vs, std::uint64_t num,
                                 std::uint64_t den);
// Points every chain's withholding set at its corrupted share of the set
// signing the next block.
void apply_withholding(relay::Network& net, const std::vector<Corruption>& corruption);

struct RunArtifacts {
  std::string trace_jsonl;
  std::string gas_jsonl;
  std::string journal_jsonl;
  nlohmann::json summary;
  std::string tables;

  std::uint64_t submitted = 0;
  std::uint64_t confirmed_dc = 0;
  std::vector<chain::CtxKey> stalled;
  std::vector<chain::CtxKey> unbacked;
  std::uint64_t status_regressions = 0;
  std::uint64_t ticks = 0;
  std::optional<economics::DegradationReport> degradation;

  bool liveness_held() const { return stalled.empty() && confirmed_dc == submitted; }
  bool consistency_held() const { return unbacked.empty() && status_regressions == 0; }
};

// A ctx to submit: direction plus payload.
struct WorkItem {
  chain::ChainId from = 0;
  chain::ChainId to = 0;
  chain::Payload payload;
};

// The scenario's synthetic workload, drawn from its seed.
std::vector<WorkItem> synthetic_workload(const Scenario& s);

// Submits the items through the MOS service, per_tick between ticks, then
// runs until everything settles or the horizon after the last submission
// passes.
RunArtifacts run(const Scenario& s, const std::vector<WorkItem>& work);
inline RunArtifacts run(const Scenario& s) { return run(s, synthetic_workload(s)); }

struct DatasetRow {
  chain::ChainId source = 0;
  chain::ChainId dest = 0;
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  std::string token;
  std::uint64_t amount = 0;
  std::size_t line = 0;
};

// CSV with header source_chain,dest_chain,start_timestamp,end_timestamp,
// token_type,amount. Throws kDecode listing every malformed row by line.
std::vector<DatasetRow> parse_dataset(const std::string& csv);
std::vector<DatasetRow> load_dataset(const std::string& path);

// Rows become asset ctx in start-timestamp order. Throws kConfig when a row
// names a chain the scenario does not connect.
RunArtifacts replay(const Scenario& s, const std::vector<DatasetRow>& rows);

// Writes trace.jsonl, gas.jsonl, journal.jsonl, summary.json and tables.txt.
void write_artifacts(const RunArtifacts& a, const std::string& dir);

}  // namespace maprelay::harness
