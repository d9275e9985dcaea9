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

#include <string_view>

#include "maprelay/common/bytes.hpp"

namespace maprelay {

enum class HashAlgo { kSha256, kSha3_256, kKeccak256, kBlake2s256 };

std::string_view to_string(HashAlgo algo);
HashAlgo parse_hash_algo(std::string_view name);

Digest hash(ByteView data, HashAlgo algo = HashAlgo::kSha256);
inline Digest hash(std::string_view s, HashAlgo algo = HashAlgo::kSha256) {
  return hash(as_bytes(s), algo);
}

// Incremental hashing. Not copyable; finalize() may be called once.
class Hasher {
 public:
  explicit Hasher(HashAlgo algo = HashAlgo::kSha256);
  ~Hasher();
  Hasher(const Hasher&) = delete;
  Hasher& operator=(const Hasher&) = delete;

  Hasher& update(ByteView data);
  Hasher& update(std::string_view s) { return update(as_bytes(s)); }
  Hasher& update(const Digest& d) { return update(d.view()); }
  Digest finalize();

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace maprelay
