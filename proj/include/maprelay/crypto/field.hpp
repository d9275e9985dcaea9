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

#include <array>
#include <cstdint>
#include <string>

#include "maprelay/common/bytes.hpp"

namespace maprelay::crypto {

using Limbs = std::array<std::uint64_t, 4>;  // little-endian 64-bit limbs

namespace limbs {

inline bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

inline std::uint64_t sub_inplace(Limbs& a, const Limbs& b) {
  unsigned __int128 borrow = 0;
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 d = static_cast<unsigned __int128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = (d >> 64) & 1;
  }
  return static_cast<std::uint64_t>(borrow);
}

inline std::uint64_t add_inplace(Limbs& a, const Limbs& b) {
  unsigned __int128 carry = 0;
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    carry += static_cast<unsigned __int128>(a[i]) + b[i];
    a[i] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
  return static_cast<std::uint64_t>(carry);
}

inline bool is_zero(const Limbs& a) { return (a[0] | a[1] | a[2] | a[3]) == 0; }

inline int bit_length(const Limbs& a) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != 0) return 64 * i + 64 - __builtin_clzll(a[i]);
  }
  return 0;
}

inline bool bit(const Limbs& a, int i) { return (a[i / 64] >> (i % 64)) & 1; }

Limbs from_be_bytes(ByteView be32);
void to_be_bytes(const Limbs& a, std::uint8_t* out32);
Limbs from_decimal(const std::string& dec);
std::string to_decimal(const Limbs& a);

}  // namespace limbs

// Prime field element in Montgomery form, R = 2^256. The modulus must leave
// headroom below 2^255 (true for both BN254 fields) so that additions never
// overflow four limbs.
template <class P>
class MontField {
 public:
  constexpr MontField() = default;

  static MontField zero() { return MontField(); }
  static MontField one() {
    MontField r;
    r.v_ = P::kOne;
    return r;
  }
  static MontField from_u64(std::uint64_t x) { return from_canonical(Limbs{x, 0, 0, 0}); }
  // Requires a < modulus.
  static MontField from_canonical(const Limbs& a) {
    MontField r;
    r.v_ = a;
    return r * r2();
  }
  // Reduces any 256-bit integer.
  static MontField from_limbs_reduce(Limbs a) {
    while (limbs::geq(a, P::kModulus)) limbs::sub_inplace(a, P::kModulus);
    return from_canonical(a);
  }
  // Reduces a big-endian byte string of any length modulo the prime.
  static MontField from_be_bytes_reduce(ByteView be) {
    MontField acc;
    MontField base = from_canonical(P::kTwo64Mod);  // 2^64 mod p
    std::size_t n = be.size();
    std::size_t head = n % 8;
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < head; ++i) word = word << 8 | be[i];
    if (head) acc = from_u64(word);
    for (std::size_t i = head; i < n; i += 8) {
      word = 0;
      for (std::size_t j = 0; j < 8; ++j) word = word << 8 | be[i + j];
      acc = acc * base + from_u64(word);
    }
    return acc;
  }
  // Strict decode of a 32-byte big-endian canonical encoding.
  static bool from_be_bytes_strict(ByteView be32, MontField& out) {
    if (be32.size() != 32) return false;
    Limbs a = limbs::from_be_bytes(be32);
    if (limbs::geq(a, P::kModulus)) return false;
    out = from_canonical(a);
    return true;
  }
  static MontField from_decimal(const std::string& dec) {
    return from_canonical(limbs::from_decimal(dec));
  }

  static const Limbs& modulus() { return P::kModulus; }

  Limbs canonical() const {
    MontField one_raw;
    one_raw.v_ = Limbs{1, 0, 0, 0};
    return (*this * one_raw).v_;
  }
  void to_be_bytes(std::uint8_t* out32) const { limbs::to_be_bytes(canonical(), out32); }
  std::string to_decimal() const { return limbs::to_decimal(canonical()); }
  const Limbs& raw() const { return v_; }

  bool is_zero() const { return limbs::is_zero(v_); }
  bool operator==(const MontField& o) const { return v_ == o.v_; }
  bool operator!=(const MontField& o) const { return v_ != o.v_; }

  MontField operator+(const MontField& o) const {
    MontField r = *this;
    limbs::add_inplace(r.v_, o.v_);
    Limbs t = r.v_;
    if (!limbs::sub_inplace(t, P::kModulus)) r.v_ = t;
    return r;
  }
  MontField operator-(const MontField& o) const {
    MontField r = *this;
    if (limbs::sub_inplace(r.v_, o.v_)) limbs::add_inplace(r.v_, P::kModulus);
    return r;
  }
  MontField operator-() const {
    if (is_zero()) return *this;
    MontField r;
    r.v_ = P::kModulus;
    limbs::sub_inplace(r.v_, v_);
    return r;
  }
  MontField& operator+=(const MontField& o) { return *this = *this + o; }
  MontField& operator-=(const MontField& o) { return *this = *this - o; }
  MontField& operator*=(const MontField& o) { return *this = *this * o; }

  MontField dbl() const { return *this + *this; }

  // Montgomery multiplication: full 512-bit product, then four reduction
  // rounds (separated operand scanning).
  MontField operator*(const MontField& o) const {
    using u128 = unsigned __int128;
    const Limbs& a = v_;
    const Limbs& b = o.v_;
    std::uint64_t t[9] = {};
#pragma GCC unroll 4
    for (int i = 0; i < 4; ++i) {
      std::uint64_t carry = 0;
#pragma GCC unroll 4
      for (int j = 0; j < 4; ++j) {
        u128 x = static_cast<u128>(a[i]) * b[j] + t[i + j] + carry;
        t[i + j] = static_cast<std::uint64_t>(x);
        carry = static_cast<std::uint64_t>(x >> 64);
      }
      t[i + 4] = carry;
    }
#pragma GCC unroll 4
    for (int i = 0; i < 4; ++i) {
      std::uint64_t m = t[i] * P::kInv;
      std::uint64_t carry = 0;
#pragma GCC unroll 4
      for (int j = 0; j < 4; ++j) {
        u128 x = static_cast<u128>(m) * P::kModulus[j] + t[i + j] + carry;
        t[i + j] = static_cast<std::uint64_t>(x);
        carry = static_cast<std::uint64_t>(x >> 64);
      }
      // propagate into the upper half
      for (int k = i + 4; carry != 0 && k < 9; ++k) {
        u128 x = static_cast<u128>(t[k]) + carry;
        t[k] = static_cast<std::uint64_t>(x);
        carry = static_cast<std::uint64_t>(x >> 64);
      }
    }
    MontField r;
    r.v_ = Limbs{t[4], t[5], t[6], t[7]};
    if (t[8] != 0 || limbs::geq(r.v_, P::kModulus)) limbs::sub_inplace(r.v_, P::kModulus);
    return r;
  }

  MontField square() const { return *this * *this; }

  MontField pow(const Limbs& e) const {
    MontField r = one();
    for (int i = limbs::bit_length(e) - 1; i >= 0; --i) {
      r = r.square();
      if (limbs::bit(e, i)) r = r * *this;
    }
    return r;
  }

  // Zero maps to zero.
  MontField inverse() const {
    Limbs e = P::kModulus;
    limbs::sub_inplace(e, Limbs{2, 0, 0, 0});
    return pow(e);
  }

  // Euler criterion: 1 for nonzero squares, -1 for non-squares, 0 for zero.
  int legendre() const {
    if (is_zero()) return 0;
    Limbs e = P::kModulus;
    limbs::sub_inplace(e, Limbs{1, 0, 0, 0});
    // (p-1)/2
    for (int i = 0; i < 3; ++i) e[i] = (e[i] >> 1) | (e[i + 1] << 63);
    e[3] >>= 1;
    return pow(e) == one() ? 1 : -1;
  }

  // RFC 9380 sgn0 for prime fields: parity of the canonical value.
  bool sgn0() const { return canonical()[0] & 1; }

 private:
  static MontField r2() {
    MontField r;
    r.v_ = P::kR2;
    return r;
  }

  Limbs v_{};
};

struct FpParams {
  static constexpr Limbs kModulus = {0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                     0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr std::uint64_t kInv = 0x87d20782e4866389ULL;
  static constexpr Limbs kR2 = {0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL,
                                0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
  static constexpr Limbs kOne = {0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL,
                                 0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
  // 2^64 mod p (2^64 < p)
  static constexpr Limbs kTwo64Mod = {0, 1, 0, 0};
};

struct FrParams {
  static constexpr Limbs kModulus = {0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                     0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr std::uint64_t kInv = 0xc2e1f593efffffffULL;
  static constexpr Limbs kR2 = {0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                                0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
  static constexpr Limbs kOne = {0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                                 0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
  static constexpr Limbs kTwo64Mod = {0, 1, 0, 0};
};

// Base field of BN254 and its scalar field (group order r).
using Fp = MontField<FpParams>;
using Fr = MontField<FrParams>;

// Square root in Fp (p = 3 mod 4). Returns false for non-residues.
bool sqrt(const Fp& a, Fp& out);

}  // namespace maprelay::crypto
