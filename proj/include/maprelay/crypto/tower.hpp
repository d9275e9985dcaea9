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

#include "maprelay/crypto/field.hpp"

namespace maprelay::crypto {

// Fp2 = Fp[i] / (i^2 + 1)
struct Fp2 {
  Fp c0, c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  static Fp2 from_u64(std::uint64_t a, std::uint64_t b = 0) {
    return {Fp::from_u64(a), Fp::from_u64(b)};
  }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

  Fp2 operator*(const Fp2& o) const {
    Fp t0 = c0 * o.c0;
    Fp t1 = c1 * o.c1;
    return {t0 - t1, (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  Fp2 operator*(const Fp& s) const { return {c0 * s, c1 * s}; }
  Fp2 square() const {
    Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t + t};
  }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 conj() const { return {c0, -c1}; }
  // Multiply by xi = 9 + i.
  Fp2 mul_by_xi() const {
    Fp a8 = c0.dbl().dbl().dbl();
    Fp b8 = c1.dbl().dbl().dbl();
    return {a8 + c0 - c1, b8 + c1 + c0};
  }
  Fp2 inverse() const {
    Fp n = (c0.square() + c1.square()).inverse();
    return {c0 * n, -(c1 * n)};
  }
  Fp2 pow(const Limbs& e) const {
    Fp2 r = one();
    for (int i = limbs::bit_length(e) - 1; i >= 0; --i) {
      r = r.square();
      if (limbs::bit(e, i)) r = r * *this;
    }
    return r;
  }
};

bool sqrt(const Fp2& a, Fp2& out);

// Fp6 = Fp2[v] / (v^3 - xi)
struct Fp6 {
  Fp2 c0, c1, c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
  bool operator!=(const Fp6& o) const { return !(*this == o); }

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }

  Fp6 operator*(const Fp6& o) const {
    Fp2 t0 = c0 * o.c0;
    Fp2 t1 = c1 * o.c1;
    Fp2 t2 = c2 * o.c2;
    Fp2 r0 = ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi() + t0;
    Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi();
    Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
    return {r0, r1, r2};
  }
  Fp6 operator*(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }
  // Multiply by (b0 + b1 v).
  Fp6 mul_by_01(const Fp2& b0, const Fp2& b1) const {
    Fp2 t0 = c0 * b0;
    Fp2 t1 = c1 * b1;
    Fp2 r0 = (c2 * b1).mul_by_xi() + t0;
    Fp2 r1 = (c0 + c1) * (b0 + b1) - t0 - t1;
    Fp2 r2 = c2 * b0 + t1;
    return {r0, r1, r2};
  }
  Fp6 square() const { return *this * *this; }
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fp6 inverse() const {
    Fp2 t0 = c0.square() - (c1 * c2).mul_by_xi();
    Fp2 t1 = c2.square().mul_by_xi() - c0 * c1;
    Fp2 t2 = c1.square() - c0 * c2;
    Fp2 d = c0 * t0 + (c2 * t1 + c1 * t2).mul_by_xi();
    Fp2 di = d.inverse();
    return {t0 * di, t1 * di, t2 * di};
  }
};

// Fp12 = Fp6[w] / (w^2 - v). Coefficients of w^0..w^5 are
// c0.c0, c1.c0, c0.c1, c1.c1, c0.c2, c1.c2.
struct Fp12 {
  Fp6 c0, c1;

  static Fp12 zero() { return {}; }
  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_one() const { return *this == one(); }
  bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp12& o) const { return !(*this == o); }

  Fp12 operator*(const Fp12& o) const {
    Fp6 t0 = c0 * o.c0;
    Fp6 t1 = c1 * o.c1;
    return {t0 + t1.mul_by_v(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }
  Fp12 square() const {
    Fp6 t = c0 * c1;
    Fp6 r0 = (c0 + c1) * (c0 + c1.mul_by_v()) - t - t.mul_by_v();
    return {r0, t + t};
  }
  // Multiply by the sparse line a + b w + c w^3.
  Fp12 mul_by_line(const Fp2& a, const Fp2& b, const Fp2& c) const {
    Fp6 t0 = c0 * a;
    Fp6 t1 = c1.mul_by_01(b, c);
    Fp6 r1 = (c0 + c1).mul_by_01(a + b, c) - t0 - t1;
    return {t0 + t1.mul_by_v(), r1};
  }
  Fp12 conj() const { return {c0, -c1}; }
  Fp12 inverse() const {
    Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }
  Fp12 frobenius() const;
  Fp12 pow(const Limbs& e) const {
    Fp12 r = one();
    for (int i = limbs::bit_length(e) - 1; i >= 0; --i) {
      r = r.square();
      if (limbs::bit(e, i)) r = r * *this;
    }
    return r;
  }
  Fp12 pow_u64(std::uint64_t e) const { return pow(Limbs{e, 0, 0, 0}); }

  // 12 base-field coefficients, each 32 bytes big-endian, in the order
  // c0.c0.c0, c0.c0.c1, c0.c1.c0, ... (tower order).
  Bytes to_bytes() const;
};

// Constants xi^(k(p-1)/6) for k = 0..5, and the twist Frobenius constants.
struct FrobeniusConstants {
  Fp2 gamma[6];
  Fp2 twist_x;  // xi^((p-1)/3)
  Fp2 twist_y;  // xi^((p-1)/2)
};
const FrobeniusConstants& frobenius_constants();

}  // namespace maprelay::crypto
