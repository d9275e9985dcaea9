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

#include "maprelay/common/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstring>

#include "maprelay/common/error.hpp"

namespace maprelay {

namespace {

// Original Keccak padding (0x01), which is what EVM chains call keccak256.
// OpenSSL 3.0 only exposes the FIPS 202 variant.
class Keccak256 {
 public:
  void update(ByteView data) {
    for (std::uint8_t b : data) {
      state_[pos_ / 8] ^= static_cast<std::uint64_t>(b) << (8 * (pos_ % 8));
      if (++pos_ == kRate) {
        permute();
        pos_ = 0;
      }
    }
  }

  Digest finalize() {
    state_[pos_ / 8] ^= std::uint64_t{0x01} << (8 * (pos_ % 8));
    state_[(kRate - 1) / 8] ^= std::uint64_t{0x80} << (8 * ((kRate - 1) % 8));
    permute();
    Digest d;
    for (std::size_t i = 0; i < 32; ++i) {
      d.bytes[i] = static_cast<std::uint8_t>(state_[i / 8] >> (8 * (i % 8)));
    }
    return d;
  }

 private:
  static constexpr std::size_t kRate = 136;

  static std::uint64_t rotl(std::uint64_t x, int s) {
    return s == 0 ? x : (x << s) | (x >> (64 - s));
  }

  void permute() {
    static constexpr std::uint64_t kRc[24] = {
        0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
        0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
        0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
        0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
        0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
        0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
        0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
        0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};
    static constexpr int kRot[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55,
                                     20, 3,  10, 43, 25, 39, 41, 45, 15,
                                     21, 8,  18, 2,  61, 56, 14};
    auto& a = state_;
    for (int round = 0; round < 24; ++round) {
      std::uint64_t c[5], d[5], b[25];
      for (int x = 0; x < 5; ++x) {
        c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
      }
      for (int x = 0; x < 5; ++x) d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
      for (int i = 0; i < 25; ++i) a[i] ^= d[i % 5];
      for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
          b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(a[x + 5 * y], kRot[x + 5 * y]);
        }
      }
      for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
          a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
        }
      }
      a[0] ^= kRc[round];
    }
  }

  std::array<std::uint64_t, 25> state_{};
  std::size_t pos_ = 0;
};

const EVP_MD* evp_for(HashAlgo algo) {
  switch (algo) {
    case HashAlgo::kSha256: return EVP_sha256();
    case HashAlgo::kSha3_256: return EVP_sha3_256();
    case HashAlgo::kBlake2s256: return EVP_blake2s256();
    case HashAlgo::kKeccak256: return nullptr;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(HashAlgo algo) {
  switch (algo) {
    case HashAlgo::kSha256: return "sha256";
    case HashAlgo::kSha3_256: return "sha3-256";
    case HashAlgo::kKeccak256: return "keccak256";
    case HashAlgo::kBlake2s256: return "blake2s256";
  }
  return "unknown";
}

HashAlgo parse_hash_algo(std::string_view name) {
  for (auto a : {HashAlgo::kSha256, HashAlgo::kSha3_256, HashAlgo::kKeccak256,
                 HashAlgo::kBlake2s256}) {
    if (to_string(a) == name) return a;
  }
  throw Error(ErrorCode::kConfig, "unknown hash algorithm: " + std::string(name));
}

struct Hasher::Impl {
  HashAlgo algo;
  EVP_MD_CTX* ctx = nullptr;
  Keccak256 keccak;
  bool finalized = false;
};

Hasher::Hasher(HashAlgo algo) : impl_(new Impl()) {
  impl_->algo = algo;
  if (const EVP_MD* md = evp_for(algo)) {
    impl_->ctx = EVP_MD_CTX_new();
    if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, md, nullptr) != 1) {
      EVP_MD_CTX_free(impl_->ctx);
      delete impl_;
      throw Error(ErrorCode::kPrecondition, "EVP digest init failed");
    }
  }
}

Hasher::~Hasher() {
  if (impl_->ctx != nullptr) EVP_MD_CTX_free(impl_->ctx);
  delete impl_;
}

Hasher& Hasher::update(ByteView data) {
  MAPRELAY_ENFORCE(!impl_->finalized, ErrorCode::kPrecondition, "hasher already finalized");
  if (impl_->ctx != nullptr) {
    EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
  } else {
    impl_->keccak.update(data);
  }
  return *this;
}

Digest Hasher::finalize() {
  MAPRELAY_ENFORCE(!impl_->finalized, ErrorCode::kPrecondition, "hasher already finalized");
  impl_->finalized = true;
  if (impl_->ctx == nullptr) return impl_->keccak.finalize();
  Digest d;
  unsigned int len = 0;
  EVP_DigestFinal_ex(impl_->ctx, d.bytes.data(), &len);
  MAPRELAY_ENFORCE(len == 32, ErrorCode::kPrecondition, "unexpected digest length");
  return d;
}

Digest hash(ByteView data, HashAlgo algo) {
  Hasher h(algo);
  h.update(data);
  return h.finalize();
}

}  // namespace maprelay
