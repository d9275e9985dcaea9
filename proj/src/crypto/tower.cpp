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

#include "maprelay/crypto/tower.hpp"

#include <gmpxx.h>

#include "maprelay/common/error.hpp"

namespace maprelay::crypto {

namespace limbs {

Limbs from_be_bytes(ByteView be32) {
  Limbs out{};
  for (int i = 0; i < 32; ++i) {
    out[3 - i / 8] = out[3 - i / 8] << 8 | be32[i];
  }
  return out;
}

void to_be_bytes(const Limbs& a, std::uint8_t* out32) {
  for (int i = 0; i < 32; ++i) {
    out32[i] = static_cast<std::uint8_t>(a[3 - i / 8] >> (8 * (7 - i % 8)));
  }
}

Limbs from_decimal(const std::string& dec) {
  mpz_class v;
  MAPRELAY_ENFORCE(v.set_str(dec, 10) == 0 && v >= 0, ErrorCode::kDecode,
                   "bad decimal integer");
  MAPRELAY_ENFORCE(mpz_sizeinbase(v.get_mpz_t(), 2) <= 256, ErrorCode::kDecode,
                   "integer exceeds 256 bits");
  Limbs out{};
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  return out;
}

std::string to_decimal(const Limbs& a) {
  mpz_class v;
  mpz_import(v.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, a.data());
  return v.get_str(10);
}

}  // namespace limbs

namespace {

Limbs to_limbs(const mpz_class& v) {
  Limbs out{};
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  return out;
}

mpz_class p_mpz() { return mpz_class(limbs::to_decimal(FpParams::kModulus)); }

FrobeniusConstants make_constants() {
  mpz_class p = p_mpz();
  Fp2 xi = Fp2::from_u64(9, 1);
  FrobeniusConstants k;
  Fp2 g1 = xi.pow(to_limbs((p - 1) / 6));
  k.gamma[0] = Fp2::one();
  for (int i = 1; i < 6; ++i) k.gamma[i] = k.gamma[i - 1] * g1;
  k.twist_x = k.gamma[2];
  k.twist_y = k.gamma[3];
  return k;
}

}  // namespace

const FrobeniusConstants& frobenius_constants() {
  static const FrobeniusConstants k = make_constants();
  return k;
}

bool sqrt(const Fp& a, Fp& out) {
  // (p + 1) / 4
  static const Limbs e = to_limbs((p_mpz() + 1) / 4);
  Fp r = a.pow(e);
  if (r.square() != a) return false;
  out = r;
  return true;
}

bool sqrt(const Fp2& a, Fp2& out) {
  if (a.is_zero()) {
    out = Fp2::zero();
    return true;
  }
  static const Limbs e1 = to_limbs((p_mpz() - 3) / 4);
  static const Limbs e2 = to_limbs((p_mpz() - 1) / 2);
  Fp2 a1 = a.pow(e1);
  Fp2 alpha = a1.square() * a;
  Fp2 x0 = a1 * a;
  Fp2 x;
  if (alpha == -Fp2::one()) {
    x = Fp2{-x0.c1, x0.c0};  // i * x0
  } else {
    Fp2 b = (Fp2::one() + alpha).pow(e2);
    x = b * x0;
  }
  if (x.square() != a) return false;
  out = x;
  return true;
}

Fp12 Fp12::frobenius() const {
  const auto& g = frobenius_constants().gamma;
  return {{c0.c0.conj() * g[0], c0.c1.conj() * g[2], c0.c2.conj() * g[4]},
          {c1.c0.conj() * g[1], c1.c1.conj() * g[3], c1.c2.conj() * g[5]}};
}

Bytes Fp12::to_bytes() const {
  Bytes out(12 * 32);
  const Fp* coeffs[12] = {&c0.c0.c0, &c0.c0.c1, &c0.c1.c0, &c0.c1.c1, &c0.c2.c0, &c0.c2.c1,
                          &c1.c0.c0, &c1.c0.c1, &c1.c1.c0, &c1.c1.c1, &c1.c2.c0, &c1.c2.c1};
  for (int i = 0; i < 12; ++i) coeffs[i]->to_be_bytes(out.data() + 32 * i);
  return out;
}

}  // namespace maprelay::crypto
