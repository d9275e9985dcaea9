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

#include "maprelay/harness/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "maprelay/common/error.hpp"
#include "maprelay/common/rng.hpp"

namespace maprelay::harness {

std::unique_ptr<relay::Network> build_network(const Scenario& s) {
  relay::NetworkOptions opts;
  opts.gas = s.gas;
  opts.horizon_ticks = s.horizon_ticks;
  auto net = std::make_unique<relay::Network>(s.relay_chain, opts);
  for (const auto& c : s.chains) net->add_chain(c.config, c.source, c.dest);
  for (const auto& p : s.provers) net->add_prover(p);
  return net;
}

crypto::Bitmap corrupted_members(const crypto::ValidatorSet& vs, std::uint64_t num,
                                 std::uint64_t den) {
  crypto::Bitmap b(vs.size(), false);
  using u128 = unsigned __int128;
  const u128 target = static_cast<u128>(num) * vs.total_weight();
  u128 have = 0;
  for (std::size_t i = 0; i < vs.size() && have < target; ++i) {
    b[i] = true;
    have += static_cast<u128>(vs.entries()[i].weight) * den;
  }
  return b;
}

void apply_withholding(relay::Network& net, const std::vector<Corruption>& corruption) {
  for (const auto& c : corruption) {
    if (c.kind != CorruptionKind::kWithhold) continue;
    chain::Chain& ch = c.chain == net.rc().id() ? net.rc().chain() : net.chain(c.chain);
    const crypto::ValidatorSet& vs = ch.next_signing_set();
    crypto::Bitmap b = corrupted_members(vs, c.num, c.den);
    std::set<Bytes> pks;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i]) pks.insert(vs.entries()[i].pk_bytes);
    }
    ch.set_withholding(std::move(pks));
  }
}

std::vector<WorkItem> synthetic_workload(const Scenario& s) {
  std::vector<chain::ChainId> sources, dests;
  for (const auto& c : s.chains) {
    if (c.source) sources.push_back(c.config.chain_id);
    if (c.dest) dests.push_back(c.config.chain_id);
  }
  DetRng rng = DetRng::from_label("workload", s.seed);
  std::vector<WorkItem> out;
  for (std::uint64_t i = 0; i < s.workload.count; ++i) {
    WorkItem w;
    w.from = sources[rng.below(sources.size())];
    do {
      w.to = dests[rng.below(dests.size())];
    } while (w.to == w.from && dests.size() > 1);
    if (w.to == w.from) continue;
    if (rng.below(100) < s.workload.asset_percent) {
      w.payload = chain::AssetPayload{s.workload.tokens[rng.below(s.workload.tokens.size())],
                                      rng.range(1, std::max<std::uint64_t>(1, s.workload.max_amount)),
                                      "transfer"};
    } else {
      Bytes call(rng.range(1, 32));
      for (auto& x : call) x = static_cast<std::uint8_t>(rng.below(256));
      w.payload = chain::MessagePayload{std::move(call)};
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

std::string stage_table(const relay::Network& net) {
  struct Row {
    std::uint64_t events = 0, ok = 0, gas = 0;
  };
  std::map<relay::Stage, Row> rows;
  for (const auto& e : net.trace()) {
    Row& r = rows[e.stage];
    ++r.events;
    r.ok += e.verdict == "ok";
    r.gas += e.gas;
  }
  std::ostringstream o;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %8s %8s %14s %12s\n", "stage", "events", "ok", "gas", "gas/event");
  o << buf;
  for (const auto& [st, r] : rows) {
    std::snprintf(buf, sizeof buf, "%-12s %8llu %8llu %14llu %12llu\n",
                  std::string(relay::to_string(st)).c_str(),
                  static_cast<unsigned long long>(r.events), static_cast<unsigned long long>(r.ok),
                  static_cast<unsigned long long>(r.gas),
                  static_cast<unsigned long long>(r.events ? r.gas / r.events : 0));
    o << buf;
  }
  return o.str();
}

// Count of journal entries that move a record to an earlier status.
std::uint64_t regressions(const mos::RecordStore& store) {
  std::map<std::string, int> last;
  std::uint64_t bad = 0;
  for (const auto& line : store.journal()) {
    auto j = nlohmann::json::parse(line);
    if (j.at("op") == "rejection") continue;
    int st = static_cast<int>(mos::parse_status(j.at("status").get<std::string>()));
    std::string k = j.at("key").dump();
    auto it = last.find(k);
    if (it != last.end() && st <= it->second) ++bad;
    last[k] = st;
  }
  return bad;
}

}  // namespace

RunArtifacts run(const Scenario& s, const std::vector<WorkItem>& work) {
  auto errs = validate(s);
  if (!errs.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw Error(ErrorCode::kConfig, msg);
  }
  auto net = build_network(s);
  mos::Service svc(*net, s.pricing);
  RunArtifacts a;
  std::uint64_t fees = 0;
  std::size_t next = 0;
  std::uint64_t last_submit = 0;
  auto settled = [&] {
    for (const auto& [k, st] : net->submitted()) {
      if (!st.confirmed_dc) return false;
    }
    return true;
  };
  while (net->now_tick() < s.max_ticks) {
    if (next < work.size()) {
      for (std::uint64_t i = 0; i < s.workload.per_tick && next < work.size(); ++i, ++next) {
        const WorkItem& w = work[next];
        std::uint64_t amount = 0;
        if (const auto* p = std::get_if<chain::AssetPayload>(&w.payload)) amount = p->amount;
        std::uint64_t fee = mos::compute_fee(amount, s.pricing);
        svc.message_out(w.from, w.to, w.payload, fee);
        fees += fee;
      }
      last_submit = net->now_tick();
    } else if (settled() || net->now_tick() > last_submit + s.horizon_ticks) {
      break;
    }
    apply_withholding(*net, s.corruption);
    net->tick();
  }
  a.ticks = net->now_tick();
  a.submitted = net->submitted().size();
  for (const auto& [k, st] : net->submitted()) a.confirmed_dc += st.confirmed_dc;
  a.stalled = net->stalled();
  a.unbacked = net->unbacked_confirmations();
  a.status_regressions = regressions(svc.store());
  a.trace_jsonl = net->trace_jsonl();
  a.gas_jsonl = net->gas_jsonl();
  a.journal_jsonl = svc.store().journal_text();

  std::map<std::string, std::uint64_t> statuses;
  for (const auto& [k, r] : svc.store().records()) statuses[std::string(mos::to_string(r.status))]++;
  nlohmann::json withheld = nlohmann::json::object();
  withheld[std::to_string(net->rc().id())] = net->rc().chain().withheld_count();
  for (auto id : net->chain_ids()) withheld[std::to_string(id)] = net->chain(id).withheld_count();
  std::map<std::string, std::uint64_t> stage_gas;
  for (const auto& e : net->trace()) stage_gas[std::string(relay::to_string(e.stage))] += e.gas;

  a.summary = {{"scenario", s.name},
               {"seed", s.seed},
               {"ticks", a.ticks},
               {"submitted", a.submitted},
               {"confirmed_dc", a.confirmed_dc},
               {"stalled", a.stalled.size()},
               {"unbacked_confirmations", a.unbacked.size()},
               {"status_regressions", a.status_regressions},
               {"statuses", statuses},
               {"fees_charged", fees},
               {"withheld_blocks", withheld},
               {"trace_events", net->trace().size()},
               {"gas_by_stage", stage_gas},
               {"liveness_held", a.liveness_held()},
               {"consistency_held", a.consistency_held()}};
  std::ostringstream t;
  t << "scenario " << s.name << "  seed " << s.seed << "  ticks " << a.ticks << "\n";
  t << "submitted " << a.submitted << "  confirmed-DC " << a.confirmed_dc << "  stalled "
    << a.stalled.size() << "  unbacked " << a.unbacked.size() << "\n\n";
  t << stage_table(*net);
  a.tables = t.str();
  a.degradation = economics::degradation_report(economics::valued_ctxs(*net),
                                                economics::ledgers_of(*net));
  a.summary["degradation"] = {{"degraded", a.degradation->degraded},
                              {"max_value", a.degradation->max_value},
                              {"max_value_over_stake", a.degradation->max_value_over_stake},
                              {"headroom", a.degradation->headroom}};
  return a;
}

std::vector<DatasetRow> parse_dataset(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<DatasetRow> rows;
  std::vector<std::string> errors;
  std::size_t n = 0;
  const std::string header = "source_chain,dest_chain,start_timestamp,end_timestamp,token_type,amount";
  auto num = [](const std::string& f, std::uint64_t& out) {
    if (f.empty() || f.find_first_not_of("0123456789") != std::string::npos) return false;
    try {
      out = std::stoull(f);
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1) {
      if (line != header) errors.push_back("line 1: expected header " + header);
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    std::string where = "line " + std::to_string(n) + ": ";
    if (f.size() != 6) {
      errors.push_back(where + "expected 6 fields, got " + std::to_string(f.size()));
      continue;
    }
    DatasetRow r;
    r.line = n;
    r.token = f[4];
    bool ok = true;
    const char* names[] = {"source_chain", "dest_chain", "start_timestamp", "end_timestamp", "", "amount"};
    std::uint64_t* outs[] = {&r.source, &r.dest, &r.start, &r.end, nullptr, &r.amount};
    for (int i : {0, 1, 2, 3, 5}) {
      if (!num(f[i], *outs[i])) {
        errors.push_back(where + names[i] + " is not a non-negative integer");
        ok = false;
      }
    }
    if (r.token.empty()) {
      errors.push_back(where + "token_type is empty");
      ok = false;
    }
    if (ok && r.end < r.start) {
      errors.push_back(where + "end_timestamp precedes start_timestamp");
      ok = false;
    }
    if (ok && r.source == r.dest) {
      errors.push_back(where + "source and destination are the same chain");
      ok = false;
    }
    if (ok) rows.push_back(std::move(r));
  }
  if (n == 0) errors.push_back("line 1: missing header");
  if (!errors.empty()) {
    std::string msg = "malformed dataset:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(ErrorCode::kDecode, msg);
  }
  return rows;
}

std::vector<DatasetRow> load_dataset(const std::string& path) {
  std::ifstream in(path);
  MAPRELAY_ENFORCE(in.good(), ErrorCode::kNotFound, "cannot open dataset " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

RunArtifacts replay(const Scenario& s, const std::vector<DatasetRow>& rows) {
  std::set<chain::ChainId> sources, dests;
  for (const auto& c : s.chains) {
    if (c.source) sources.insert(c.config.chain_id);
    if (c.dest) dests.insert(c.config.chain_id);
  }
  std::vector<std::string> errors;
  for (const auto& r : rows) {
    if (!sources.count(r.source) || !dests.count(r.dest)) {
      errors.push_back("line " + std::to_string(r.line) + ": direction " + std::to_string(r.source) +
                       "->" + std::to_string(r.dest) + " is not connected in the scenario");
    }
  }
  if (!errors.empty()) {
    std::string msg = "dataset does not fit the scenario:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(ErrorCode::kConfig, msg);
  }
  std::vector<const DatasetRow*> order;
  for (const auto& r : rows) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const DatasetRow* a, const DatasetRow* b) { return a->start < b->start; });
  std::vector<WorkItem> work;
  for (const auto* r : order) {
    work.push_back({r->source, r->dest, chain::AssetPayload{r->token, r->amount, "transfer"}});
  }
  RunArtifacts a = run(s, work);
  a.summary["dataset_rows"] = rows.size();
  a.tables += "\n" + a.degradation->table();
  return a;
}

void write_artifacts(const RunArtifacts& a, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    MAPRELAY_ENFORCE(out.good(), ErrorCode::kInvalidArgument, std::string("cannot write ") + name);
    out << text;
  };
  put("trace.jsonl", a.trace_jsonl);
  put("gas.jsonl", a.gas_jsonl);
  put("journal.jsonl", a.journal_jsonl);
  put("summary.json", a.summary.dump(2) + "\n");
  put("tables.txt", a.tables);
  if (a.degradation) put("degradation.json", a.degradation->to_json().dump(2) + "\n");
}

}  // namespace maprelay::harness
