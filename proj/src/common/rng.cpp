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

#include "maprelay/common/rng.hpp"

#include "maprelay/common/bytes.hpp"
#include "maprelay/common/hash.hpp"

namespace maprelay {

DetRng DetRng::from_label(std::string_view label, std::uint64_t a, std::uint64_t b) {
  Writer w;
  w.str(label).u64(a).u64(b);
  Digest d = hash(w.bytes());
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = seed << 8 | d.bytes[i];
  return DetRng(seed);
}

std::uint64_t DetRng::below(std::uint64_t n) {
  if ((n & (n - 1)) == 0) return eng_() & (n - 1);
  // reject the biased tail
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

}  // namespace maprelay
