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

#include <optional>

#include "maprelay/common/bytes.hpp"
#include "maprelay/crypto/tower.hpp"

namespace maprelay::crypto {

template <class F>
struct Affine {
  F x, y;
  bool infinity = true;

  bool operator==(const Affine& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
};

// Short Weierstrass point y^2 = x^3 + b in Jacobian coordinates.
template <class F, class Curve>
class Jacobian {
 public:
  Jacobian() : x_(F::one()), y_(F::one()), z_(F::zero()) {}
  Jacobian(const F& x, const F& y) : x_(x), y_(y), z_(F::one()) {}
  explicit Jacobian(const Affine<F>& a) : Jacobian() {
    if (!a.infinity) *this = Jacobian(a.x, a.y);
  }

  static Jacobian infinity() { return Jacobian(); }
  static Jacobian generator() { return Jacobian(Curve::gen_x(), Curve::gen_y()); }

  bool is_infinity() const { return z_.is_zero(); }

  static bool on_curve(const F& x, const F& y) {
    return y.square() == x.square() * x + Curve::b();
  }
  bool is_on_curve() const {
    if (is_infinity()) return true;
    Affine<F> a = to_affine();
    return on_curve(a.x, a.y);
  }

  Affine<F> to_affine() const {
    if (is_infinity()) return {};
    F zi = z_.inverse();
    F zi2 = zi.square();
    return {x_ * zi2, y_ * zi2 * zi, false};
  }

  bool operator==(const Jacobian& o) const {
    if (is_infinity() || o.is_infinity()) return is_infinity() == o.is_infinity();
    F z1z1 = z_.square();
    F z2z2 = o.z_.square();
    if (x_ * z2z2 != o.x_ * z1z1) return false;
    return y_ * z2z2 * o.z_ == o.y_ * z1z1 * z_;
  }
  bool operator!=(const Jacobian& o) const { return !(*this == o); }

  Jacobian operator-() const {
    Jacobian r = *this;
    r.y_ = -r.y_;
    return r;
  }

  // dbl-2009-l
  Jacobian dbl() const {
    if (is_infinity()) return *this;
    F a = x_.square();
    F b = y_.square();
    F c = b.square();
    F d = ((x_ + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    Jacobian r;
    r.x_ = f - d.dbl();
    r.y_ = e * (d - r.x_) - c.dbl().dbl().dbl();
    r.z_ = (y_ * z_).dbl();
    return r;
  }

  // add-2007-bl
  Jacobian operator+(const Jacobian& o) const {
    if (is_infinity()) return o;
    if (o.is_infinity()) return *this;
    F z1z1 = z_.square();
    F z2z2 = o.z_.square();
    F u1 = x_ * z2z2;
    F u2 = o.x_ * z1z1;
    F s1 = y_ * o.z_ * z2z2;
    F s2 = o.y_ * z_ * z1z1;
    if (u1 == u2) {
      if (s1 == s2) return dbl();
      return infinity();
    }
    F h = u2 - u1;
    F i = h.dbl().square();
    F j = h * i;
    F rr = (s2 - s1).dbl();
    F v = u1 * i;
    Jacobian r;
    r.x_ = rr.square() - j - v.dbl();
    r.y_ = rr * (v - r.x_) - (s1 * j).dbl();
    r.z_ = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
    return r;
  }
  Jacobian operator-(const Jacobian& o) const { return *this + (-o); }
  Jacobian& operator+=(const Jacobian& o) { return *this = *this + o; }

  Jacobian mul(const Limbs& k) const {
    Jacobian r;
    for (int i = limbs::bit_length(k) - 1; i >= 0; --i) {
      r = r.dbl();
      if (limbs::bit(k, i)) r = r + *this;
    }
    return r;
  }
  Jacobian operator*(const Fr& k) const { return mul(k.canonical()); }

  // r * P == O
  bool in_subgroup() const { return mul(FrParams::kModulus).is_infinity(); }

 private:
  F x_, y_, z_;
};

struct G1Curve {
  static Fp b() { return Fp::from_u64(3); }
  static Fp gen_x() { return Fp::from_u64(1); }
  static Fp gen_y() { return Fp::from_u64(2); }
};

struct G2Curve {
  static const Fp2& b();
  static const Fp2& gen_x();
  static const Fp2& gen_y();
};

using G1 = Jacobian<Fp, G1Curve>;
using G2 = Jacobian<Fp2, G2Curve>;
using G1Affine = Affine<Fp>;
using G2Affine = Affine<Fp2>;

// Compressed encodings: G1 is 32 bytes (x big-endian), G2 is 64 bytes
// (x.c1 then x.c0). The top bit of the first byte marks infinity, the next
// bit carries the sign of y.
inline constexpr std::size_t kG1CompressedSize = 32;
inline constexpr std::size_t kG2CompressedSize = 64;

Bytes compress(const G1& p);
Bytes compress(const G2& p);
// Return nullopt on any malformed, off-curve or (for G2) out-of-subgroup
// encoding.
std::optional<G1> decompress_g1(ByteView data);
std::optional<G2> decompress_g2(ByteView data);

// sgn0 as in RFC 9380 for Fp2.
bool sgn0(const Fp2& a);

}  // namespace maprelay::crypto
