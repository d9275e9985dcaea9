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

#include "maprelay/harness/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "maprelay/common/error.hpp"

namespace maprelay::harness {

using nlohmann::json;

std::string_view to_string(CorruptionKind k) {
  return k == CorruptionKind::kWithhold ? "withhold" : "collude";
}

namespace {

std::string_view mode_name(chain::HeaderMode m) {
  return m == chain::HeaderMode::kFullSet ? "full" : "committed";
}

json chain_json(const chain::ChainConfig& c) {
  json vals = json::array();
  for (const auto& v : c.validators) vals.push_back({{"seed", v.seed}, {"weight", v.weight}});
  return {{"id", c.chain_id},
          {"epoch_size", c.epoch_size},
          {"threshold", {c.threshold.num, c.threshold.den}},
          {"validators", vals},
          {"genesis_timestamp", c.genesis_timestamp},
          {"mode", mode_name(c.mode)},
          {"rotation",
           {{"kind", to_string(c.rotation.kind)},
            {"extra_candidates", c.rotation.extra_candidates},
            {"decay_percent", c.rotation.decay_percent}}},
          {"hash", to_string(c.hash)}};
}

// Collects errors instead of stopping at the first.
struct Parser {
  std::vector<std::string> errors;

  template <class T>
  void field(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
      out = j.at(key).get<T>();
    } catch (const std::exception&) {
      errors.push_back(where + "." + key + ": wrong type");
    }
  }

  chain::ChainConfig chain(const json& j, const std::string& where) {
    chain::ChainConfig c;
    if (!j.is_object()) {
      errors.push_back(where + ": expected an object");
      return c;
    }
    if (!j.contains("id")) errors.push_back(where + ".id: missing");
    field(j, "id", c.chain_id, where);
    field(j, "epoch_size", c.epoch_size, where);
    field(j, "genesis_timestamp", c.genesis_timestamp, where);
    if (j.contains("threshold")) {
      const json& t = j.at("threshold");
      if (t.is_array() && t.size() == 2 && t[0].is_number_unsigned() && t[1].is_number_unsigned()) {
        c.threshold = {t[0].get<std::uint64_t>(), t[1].get<std::uint64_t>()};
      } else {
        errors.push_back(where + ".threshold: expected [num, den]");
      }
    }
    std::uint64_t weight = 10;
    field(j, "weight", weight, where);
    if (!j.contains("validators")) {
      errors.push_back(where + ".validators: missing");
    } else if (j.at("validators").is_number_unsigned()) {
      auto n = j.at("validators").get<std::uint64_t>();
      for (std::uint64_t i = 0; i < n; ++i) {
        c.validators.push_back({"c" + std::to_string(c.chain_id) + "-v" + std::to_string(i), weight});
      }
    } else if (j.at("validators").is_array()) {
      std::size_t i = 0;
      for (const auto& v : j.at("validators")) {
        std::string w = where + ".validators[" + std::to_string(i++) + "]";
        chain::ValidatorSpec s;
        if (!v.is_object() || !v.contains("seed")) {
          errors.push_back(w + ": expected {seed, weight}");
          continue;
        }
        field(v, "seed", s.seed, w);
        field(v, "weight", s.weight, w);
        c.validators.push_back(s);
      }
    } else {
      errors.push_back(where + ".validators: expected a count or a list");
    }
    if (j.contains("mode")) {
      std::string m;
      field(j, "mode", m, where);
      if (m == "full") c.mode = chain::HeaderMode::kFullSet;
      else if (m == "committed") c.mode = chain::HeaderMode::kCommitted;
      else errors.push_back(where + ".mode: expected full or committed");
    }
    if (j.contains("hash")) {
      std::string h;
      field(j, "hash", h, where);
      try {
        c.hash = parse_hash_algo(h);
      } catch (const Error&) {
        errors.push_back(where + ".hash: unknown algorithm " + h);
      }
    }
    if (j.contains("rotation")) {
      const json& r = j.at("rotation");
      std::string kind = "identity";
      field(r, "kind", kind, where + ".rotation");
      try {
        c.rotation.kind = chain::parse_rotation(kind);
      } catch (const Error&) {
        errors.push_back(where + ".rotation.kind: unknown policy " + kind);
      }
      field(r, "extra_candidates", c.rotation.extra_candidates, where + ".rotation");
      field(r, "decay_percent", c.rotation.decay_percent, where + ".rotation");
    }
    return c;
  }
};

}  // namespace

json Scenario::to_json() const {
  json cs = json::array();
  for (const auto& c : chains) {
    json j = chain_json(c.config);
    j["source"] = c.source;
    j["dest"] = c.dest;
    cs.push_back(j);
  }
  json ps = json::array();
  for (const auto& p : provers) {
    ps.push_back({{"id", p.id},
                  {"fault", relay::to_string(p.fault)},
                  {"backend", prover::to_string(p.backend)}});
  }
  json cor = json::array();
  for (const auto& c : corruption) {
    cor.push_back({{"chain", c.chain}, {"fraction", {c.num, c.den}}, {"kind", to_string(c.kind)}});
  }
  return {{"name", name},
          {"seed", seed},
          {"relay_chain", chain_json(relay_chain)},
          {"chains", cs},
          {"provers", ps},
          {"corruption", cor},
          {"workload",
           {{"count", workload.count},
            {"per_tick", workload.per_tick},
            {"asset_percent", workload.asset_percent},
            {"max_amount", workload.max_amount},
            {"tokens", workload.tokens}}},
          {"gas", gas.to_json()},
          {"pricing", pricing.to_json()},
          {"horizon_ticks", horizon_ticks},
          {"max_ticks", max_ticks}};
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> e;
  auto check_chain = [&](const chain::ChainConfig& c, const std::string& where) {
    for (const auto& x : c.problems()) e.push_back(where + ": " + x);
  };
  check_chain(s.relay_chain, "relay_chain");
  std::set<chain::ChainId> ids{s.relay_chain.chain_id};
  std::size_t sources = 0, dests = 0;
  for (std::size_t i = 0; i < s.chains.size(); ++i) {
    std::string w = "chains[" + std::to_string(i) + "]";
    check_chain(s.chains[i].config, w);
    if (!ids.insert(s.chains[i].config.chain_id).second) {
      e.push_back(w + ": chain id " + std::to_string(s.chains[i].config.chain_id) + " repeated");
    }
    sources += s.chains[i].source;
    dests += s.chains[i].dest;
  }
  if (s.chains.size() < 2) e.push_back("chains: at least one chain pair is required");
  if (sources == 0 || dests == 0) e.push_back("chains: need at least one source and one destination");
  std::set<std::uint64_t> pids;
  for (const auto& p : s.provers) {
    if (!pids.insert(p.id).second) e.push_back("provers: id " + std::to_string(p.id) + " repeated");
  }
  for (std::size_t i = 0; i < s.corruption.size(); ++i) {
    const auto& c = s.corruption[i];
    std::string w = "corruption[" + std::to_string(i) + "]";
    if (!ids.count(c.chain)) e.push_back(w + ": unknown chain " + std::to_string(c.chain));
    if (c.den == 0 || c.num > c.den) e.push_back(w + ": fraction must lie in [0, 1]");
  }
  if (s.workload.per_tick == 0) e.push_back("workload.per_tick: must be positive");
  if (s.workload.asset_percent > 100) e.push_back("workload.asset_percent: must be <= 100");
  if (s.workload.tokens.empty()) e.push_back("workload.tokens: must not be empty");
  try {
    s.pricing.validate();
  } catch (const Error& x) {
    e.push_back(std::string("pricing: ") + x.what());
  }
  if (s.horizon_ticks == 0) e.push_back("horizon_ticks: must be positive");
  if (s.max_ticks < s.horizon_ticks) e.push_back("max_ticks: must be >= horizon_ticks");
  return e;
}

Scenario scenario_from_json(const json& j) {
  Parser p;
  Scenario s;
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "scenario: expected an object");
  p.field(j, "name", s.name, "scenario");
  p.field(j, "seed", s.seed, "scenario");
  p.field(j, "horizon_ticks", s.horizon_ticks, "scenario");
  p.field(j, "max_ticks", s.max_ticks, "scenario");
  if (j.contains("relay_chain")) {
    s.relay_chain = p.chain(j.at("relay_chain"), "relay_chain");
  } else {
    p.errors.push_back("relay_chain: missing");
  }
  if (j.contains("chains") && j.at("chains").is_array()) {
    std::size_t i = 0;
    for (const auto& c : j.at("chains")) {
      std::string w = "chains[" + std::to_string(i++) + "]";
      ChainSpec cs;
      cs.config = p.chain(c, w);
      if (c.is_object()) {
        p.field(c, "source", cs.source, w);
        p.field(c, "dest", cs.dest, w);
      }
      s.chains.push_back(std::move(cs));
    }
  } else {
    p.errors.push_back("chains: missing or not a list");
  }
  if (j.contains("provers")) {
    const json& ps = j.at("provers");
    if (ps.is_number_unsigned()) {
      for (std::uint64_t i = 1; i <= ps.get<std::uint64_t>(); ++i) s.provers.push_back({i});
    } else if (ps.is_array()) {
      std::size_t i = 0;
      for (const auto& x : ps) {
        std::string w = "provers[" + std::to_string(i++) + "]";
        relay::ProverSpec spec;
        spec.id = i;
        if (!x.is_object()) {
          p.errors.push_back(w + ": expected an object");
          continue;
        }
        p.field(x, "id", spec.id, w);
        std::string fault = "honest", backend = "transparent";
        p.field(x, "fault", fault, w);
        p.field(x, "backend", backend, w);
        try {
          spec.fault = relay::parse_prover_fault(fault);
        } catch (const Error&) {
          p.errors.push_back(w + ".fault: unknown fault " + fault);
        }
        try {
          spec.backend = prover::parse_backend(backend);
        } catch (const Error&) {
          p.errors.push_back(w + ".backend: unknown backend " + backend);
        }
        s.provers.push_back(spec);
      }
    } else {
      p.errors.push_back("provers: expected a count or a list");
    }
  }
  if (j.contains("corruption")) {
    std::size_t i = 0;
    for (const auto& x : j.at("corruption")) {
      std::string w = "corruption[" + std::to_string(i++) + "]";
      Corruption c;
      p.field(x, "chain", c.chain, w);
      if (x.contains("fraction")) {
        const json& f = x.at("fraction");
        if (f.is_array() && f.size() == 2 && f[0].is_number_unsigned() && f[1].is_number_unsigned()) {
          c.num = f[0].get<std::uint64_t>();
          c.den = f[1].get<std::uint64_t>();
        } else if (f.is_number()) {
          c.num = static_cast<std::uint64_t>(f.get<double>() * 1'000'000 + 0.5);
          c.den = 1'000'000;
        } else {
          p.errors.push_back(w + ".fraction: expected a number or [num, den]");
        }
      } else {
        p.errors.push_back(w + ".fraction: missing");
      }
      std::string kind = "withhold";
      p.field(x, "kind", kind, w);
      if (kind == "withhold") c.kind = CorruptionKind::kWithhold;
      else if (kind == "collude") c.kind = CorruptionKind::kCollude;
      else p.errors.push_back(w + ".kind: expected withhold or collude");
      s.corruption.push_back(c);
    }
  }
  if (j.contains("workload")) {
    const json& w = j.at("workload");
    p.field(w, "count", s.workload.count, "workload");
    p.field(w, "per_tick", s.workload.per_tick, "workload");
    p.field(w, "asset_percent", s.workload.asset_percent, "workload");
    p.field(w, "max_amount", s.workload.max_amount, "workload");
    p.field(w, "tokens", s.workload.tokens, "workload");
  }
  if (j.contains("gas")) {
    try {
      s.gas = lc::GasCostTable::from_json(j.at("gas"));
    } catch (const std::exception& e) {
      p.errors.push_back(std::string("gas: ") + e.what());
    }
  }
  if (j.contains("pricing")) {
    try {
      s.pricing = mos::PricingConfig::from_json(j.at("pricing"));
    } catch (const std::exception& e) {
      p.errors.push_back(std::string("pricing: ") + e.what());
    }
  }
  for (auto& e : validate(s)) p.errors.push_back(std::move(e));
  if (!p.errors.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& e : p.errors) msg += "\n  " + e;
    throw Error(ErrorCode::kConfig, msg);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  MAPRELAY_ENFORCE(in.good(), ErrorCode::kNotFound, "cannot open scenario " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, "scenario " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

Scenario default_scenario(std::uint64_t ctx_count, std::size_t validators) {
  auto cfg = [&](chain::ChainId id, std::size_t n, std::uint64_t weight) {
    chain::ChainConfig c;
    c.chain_id = id;
    c.epoch_size = 5;
    for (std::size_t i = 0; i < n; ++i) {
      c.validators.push_back({"c" + std::to_string(id) + "-v" + std::to_string(i), weight});
    }
    return c;
  };
  Scenario s;
  s.relay_chain = cfg(1000, 10, 700'000);
  for (chain::ChainId id = 1; id <= 3; ++id) s.chains.push_back({cfg(id, validators, 5'000'000)});
  s.provers.push_back({1});
  s.workload.count = ctx_count;
  return s;
}

}  // namespace maprelay::harness
