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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "maprelay/crypto/batch.hpp"

namespace {

using namespace maprelay;
using namespace maprelay::crypto;

std::vector<std::string> seeds(std::size_t n) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back("bench-v" + std::to_string(i));
  return s;
}

std::vector<VerifyItem> items(std::size_t n) {
  std::vector<VerifyItem> out;
  auto keys = batch_keygen_serial(seeds(n));
  for (std::size_t i = 0; i < n; ++i) {
    Bytes msg{'m', static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i >> 8)};
    out.push_back({keys[i].public_key, msg, sign(keys[i].secret, msg)});
  }
  return out;
}

std::vector<Bytes> leaves(std::size_t n) {
  std::vector<Bytes> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(512, static_cast<std::uint8_t>(i));
  return out;
}

template <auto F>
void BM_Verify(benchmark::State& st) {
  auto in = items(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(F(in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto F>
void BM_Keygen(benchmark::State& st) {
  auto in = seeds(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(F(in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto F>
void BM_Leaves(benchmark::State& st) {
  auto in = leaves(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(F(in, HashAlgo::kKeccak256));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_Verify<batch_verify_serial>)->Name("verify/serial")->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Verify<batch_verify>)->Name("verify/omp")->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Keygen<batch_keygen_serial>)->Name("keygen/serial")->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Keygen<batch_keygen>)->Name("keygen/omp")->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Leaves<batch_leaf_hashes_serial>)->Name("leaves/serial")->Arg(1024)->Arg(16384);
BENCHMARK(BM_Leaves<batch_leaf_hashes>)->Name("leaves/omp")->Arg(1024)->Arg(16384);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_threads", std::to_string(kernel_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
