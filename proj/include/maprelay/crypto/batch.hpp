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

#include <string>
#include <vector>

#include "maprelay/crypto/bls.hpp"
#include "maprelay/crypto/merkle.hpp"

// Data-parallel kernels. Each has an OpenMP version and a serial reference
// with identical results; tests compare the two and the benchmark times them.
// Op counters are thread-local, so counts from worker threads are not merged
// back into the caller.
namespace maprelay::crypto {

struct VerifyItem {
  G2 apk;
  Bytes msg;
  G1 sig;
};

std::vector<char> batch_verify(const std::vector<VerifyItem>& items);
std::vector<char> batch_verify_serial(const std::vector<VerifyItem>& items);

std::vector<KeyPair> batch_keygen(const std::vector<std::string>& seeds);
std::vector<KeyPair> batch_keygen_serial(const std::vector<std::string>& seeds);

std::vector<Digest> batch_leaf_hashes(const std::vector<Bytes>& leaves, HashAlgo algo);
std::vector<Digest> batch_leaf_hashes_serial(const std::vector<Bytes>& leaves, HashAlgo algo);

int kernel_threads();

}  // namespace maprelay::crypto
