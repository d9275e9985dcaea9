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

#include "maprelay/crypto/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maprelay::crypto {

std::vector<char> batch_verify(const std::vector<VerifyItem>& items) {
  std::vector<char> out(items.size(), 0);
  const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    out[i] = verify_aggregate(items[i].apk, items[i].msg, items[i].sig) ? 1 : 0;
  }
  return out;
}

std::vector<char> batch_verify_serial(const std::vector<VerifyItem>& items) {
  std::vector<char> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(verify_aggregate(it.apk, it.msg, it.sig) ? 1 : 0);
  return out;
}

std::vector<KeyPair> batch_keygen(const std::vector<std::string>& seeds) {
  std::vector<KeyPair> out(seeds.size());
  const long n = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = keygen(seeds[i]);
  return out;
}

std::vector<KeyPair> batch_keygen_serial(const std::vector<std::string>& seeds) {
  std::vector<KeyPair> out;
  out.reserve(seeds.size());
  for (const auto& s : seeds) out.push_back(keygen(s));
  return out;
}

std::vector<Digest> batch_leaf_hashes(const std::vector<Bytes>& leaves, HashAlgo algo) {
  std::vector<Digest> out(leaves.size());
  const long n = static_cast<long>(leaves.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = merkle_leaf_hash(leaves[i], algo);
  return out;
}

std::vector<Digest> batch_leaf_hashes_serial(const std::vector<Bytes>& leaves, HashAlgo algo) {
  std::vector<Digest> out;
  out.reserve(leaves.size());
  for (const auto& l : leaves) out.push_back(merkle_leaf_hash(l, algo));
  return out;
}

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace maprelay::crypto
