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

#include "maprelay/crypto/reference.hpp"

#include <openssl/sha.h>

#include "maprelay/common/error.hpp"

namespace maprelay::crypto::reference {

namespace {

Z md(const Z& a) {
  Z r_;
  mpz_mod(r_.get_mpz_t(), a.get_mpz_t(), p().get_mpz_t());
  return r_;
}

Z inv(const Z& a) {
  Z r_;
  if (mpz_invert(r_.get_mpz_t(), a.get_mpz_t(), p().get_mpz_t()) == 0) return Z(0);
  return r_;
}

Z powm(const Z& a, const Z& e) {
  Z r_;
  mpz_powm(r_.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p().get_mpz_t());
  return r_;
}

bool is_square(const Z& a) { return a == 0 || powm(a, (p() - 1) / 2) == 1; }

Z sqrt_fp(const Z& a) { return powm(a, (p() + 1) / 4); }

Z curve_rhs(const Z& x) { return md(x * x * x + 3); }

// Fp2 helpers
F2 f2(const Z& a, const Z& b) { return {md(a), md(b)}; }
F2 add2(const F2& x, const F2& y) { return f2(x.a + y.a, x.b + y.b); }
F2 sub2(const F2& x, const F2& y) { return f2(x.a - y.a, x.b - y.b); }
F2 mul2(const F2& x, const F2& y) { return f2(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a); }
F2 scal2(const F2& x, const Z& s) { return f2(x.a * s, x.b * s); }
F2 inv2(const F2& x) {
  Z n = inv(md(x.a * x.a + x.b * x.b));
  return f2(x.a * n, -x.b * n);
}
const F2& twist_b() {
  static const F2 v = mul2(F2{3, 0}, inv2(F2{9, 1}));
  return v;
}

Z limbs_to_z(const Limbs& l) {
  Z v;
  mpz_import(v.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, l.data());
  return v;
}

Fp z_to_fp(const Z& v) { return Fp::from_decimal(md(v).get_str(10)); }

// Polynomial ring helpers.
Poly12 pmul(const Poly12& x, const Poly12& y) {
  std::array<Z, 23> t;
  for (auto& v : t) v = 0;
  for (int i = 0; i < 12; ++i) {
    if (x.c[i] == 0) continue;
    for (int j = 0; j < 12; ++j) t[i + j] += x.c[i] * y.c[j];
  }
  for (int k = 22; k >= 12; --k) {
    if (t[k] == 0) continue;
    t[k - 6] += 18 * t[k];
    t[k - 12] -= 82 * t[k];
  }
  Poly12 out;
  for (int i = 0; i < 12; ++i) out.c[i] = md(t[i]);
  return out;
}

Poly12 pone() {
  Poly12 o;
  for (auto& v : o.c) v = 0;
  o.c[0] = 1;
  return o;
}

Poly12 pmonomial(int k) {
  Poly12 o = pone();
  o.c[0] = 0;
  o.c[k] = 1;
  return o;
}

Poly12 ppow(Poly12 x, const Z& e) {
  Poly12 acc = pone();
  for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = pmul(acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = pmul(acc, x);
  }
  return acc;
}

// Column k is (w^k)^p. The p-power map is Fp-linear.
const std::array<Poly12, 12>& frob_matrix() {
  static const std::array<Poly12, 12> m = [] {
    std::array<Poly12, 12> cols;
    Poly12 wp = ppow(pmonomial(1), p());
    cols[0] = pone();
    for (int k = 1; k < 12; ++k) cols[k] = pmul(cols[k - 1], wp);
    return cols;
  }();
  return m;
}

Poly12 pfrob(const Poly12& x) {
  const auto& m = frob_matrix();
  std::array<Z, 12> acc;
  for (auto& v : acc) v = 0;
  for (int k = 0; k < 12; ++k) {
    if (x.c[k] == 0) continue;
    for (int i = 0; i < 12; ++i) acc[i] += x.c[k] * m[k].c[i];
  }
  Poly12 out;
  for (int i = 0; i < 12; ++i) out.c[i] = md(acc[i]);
  return out;
}

// Inverse through the norm: prod_{i=1..11} x^(p^i) divided by N(x) in Fp.
Poly12 pinv(const Poly12& x) {
  Poly12 conj = pone();
  Poly12 fi = x;
  for (int i = 1; i < 12; ++i) {
    fi = pfrob(fi);
    conj = pmul(conj, fi);
  }
  Poly12 n = pmul(conj, x);
  Z ni = inv(n.c[0]);
  for (auto& v : conj.c) v = md(v * ni);
  return conj;
}

// a + b i  ->  (a - 9b) + b w^6
Poly12 embed(const F2& x) {
  Poly12 o = pone();
  o.c[0] = md(x.a - 9 * x.b);
  o.c[6] = x.b;
  return o;
}

F2 extract(const Poly12& x) {
  for (int i = 1; i < 12; ++i) {
    MAPRELAY_ENFORCE(i == 6 || x.c[i] == 0, ErrorCode::kPrecondition,
                     "element is not in the quadratic subfield");
  }
  return f2(x.c[0] + 9 * x.c[6], x.c[6]);
}

Poly12 pshift(const Poly12& x, int k) { return pmul(x, pmonomial(k)); }

const Poly12& winv(int k) {
  static const std::array<Poly12, 4> v = [] {
    std::array<Poly12, 4> out;
    out[0] = pone();
    Poly12 wi = pinv(pmonomial(1));
    for (int i = 1; i < 4; ++i) out[i] = pmul(out[i - 1], wi);
    return out;
  }();
  return v[k];
}

// Frobenius of the untwisted point, pulled back onto the twist.
P2 twist_frob(const P2& q) {
  Poly12 x = pfrob(pshift(embed(q.x), 2));
  Poly12 y = pfrob(pshift(embed(q.y), 3));
  return {extract(pmul(x, winv(2))), extract(pmul(y, winv(3))), false};
}

// Line with slope lam' through twist point t, at P:
// yP - lam' xP w + (lam' xT - yT) w^3, using lam = lam' w.
Poly12 line(const F2& lam, const P2& t, const P1& pt) {
  Poly12 l = pone();
  l.c[0] = pt.y;
  Poly12 a = pshift(embed(scal2(lam, -pt.x)), 1);
  Poly12 b = pshift(embed(sub2(mul2(lam, t.x), t.y)), 3);
  for (int i = 0; i < 12; ++i) l.c[i] = md(l.c[i] + a.c[i] + b.c[i]);
  return l;
}

F2 slope(const P2& a, const P2& b) {
  if (a.x == b.x) {
    F2 num = scal2(mul2(a.x, a.x), 3);
    return mul2(num, inv2(scal2(a.y, 2)));
  }
  return mul2(sub2(b.y, a.y), inv2(sub2(b.x, a.x)));
}

}  // namespace

const Z& p() {
  static const Z v(limbs::to_decimal(FpParams::kModulus));
  return v;
}

const Z& r() {
  static const Z v(limbs::to_decimal(FrParams::kModulus));
  return v;
}

Poly12 mul(const Poly12& a, const Poly12& b) { return pmul(a, b); }

bool Poly12::is_one() const { return *this == pone(); }

Z from_fast(const Fp& a) { return limbs_to_z(a.canonical()); }

P1 from_fast(const G1& pt) {
  if (pt.is_infinity()) return {};
  G1Affine a = pt.to_affine();
  return {from_fast(a.x), from_fast(a.y), false};
}

G1 to_fast(const P1& pt) {
  if (pt.inf) return G1::infinity();
  return G1(z_to_fp(pt.x), z_to_fp(pt.y));
}

P2 from_fast(const G2& pt) {
  if (pt.is_infinity()) return {};
  G2Affine a = pt.to_affine();
  return {{from_fast(a.x.c0), from_fast(a.x.c1)}, {from_fast(a.y.c0), from_fast(a.y.c1)}, false};
}

G2 to_fast(const P2& pt) {
  if (pt.inf) return G2::infinity();
  return G2(Fp2{z_to_fp(pt.x.a), z_to_fp(pt.x.b)}, Fp2{z_to_fp(pt.y.a), z_to_fp(pt.y.b)});
}

Poly12 from_tower(const Fp12& f) {
  const Fp2* k[6] = {&f.c0.c0, &f.c1.c0, &f.c0.c1, &f.c1.c1, &f.c0.c2, &f.c1.c2};
  Poly12 out = pone();
  out.c[0] = 0;
  for (int i = 0; i < 6; ++i) {
    Poly12 term = pshift(embed({from_fast(k[i]->c0), from_fast(k[i]->c1)}), i);
    for (int j = 0; j < 12; ++j) out.c[j] = md(out.c[j] + term.c[j]);
  }
  return out;
}

Fp12 to_tower(const Poly12& f) {
  // coefficient of w^k (k < 6) is x + y i with y = c[k+6], x - 9y = c[k]
  Fp2 k[6];
  for (int i = 0; i < 6; ++i) {
    Z y = f.c[i + 6];
    Z x = md(f.c[i] + 9 * y);
    k[i] = Fp2{z_to_fp(x), z_to_fp(y)};
  }
  return {{k[0], k[2], k[4]}, {k[1], k[3], k[5]}};
}

P1 add(const P1& a, const P1& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  Z lam;
  if (a.x == b.x) {
    if (md(a.y + b.y) == 0) return {};
    lam = md(3 * a.x * a.x * inv(md(2 * a.y)));
  } else {
    lam = md((b.y - a.y) * inv(md(b.x - a.x)));
  }
  Z x = md(lam * lam - a.x - b.x);
  Z y = md(lam * (a.x - x) - a.y);
  return {x, y, false};
}

P2 add(const P2& a, const P2& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  if (a.x == b.x && add2(a.y, b.y) == F2{0, 0}) return {};
  F2 lam = slope(a, b);
  F2 x = sub2(sub2(mul2(lam, lam), a.x), b.x);
  F2 y = sub2(mul2(lam, sub2(a.x, x)), a.y);
  return {x, y, false};
}

P1 mul(const P1& a, const Z& k) {
  P1 acc;
  for (long i = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = add(acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = add(acc, a);
  }
  return acc;
}

P2 mul(const P2& a, const Z& k) {
  P2 acc;
  for (long i = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = add(acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = add(acc, a);
  }
  return acc;
}

bool on_curve(const P1& a) { return a.inf || md(a.y * a.y - a.x * a.x * a.x - 3) == 0; }

bool on_curve(const P2& a) {
  if (a.inf) return true;
  return mul2(a.y, a.y) == add2(mul2(mul2(a.x, a.x), a.x), twist_b());
}

Bytes expand_message_xmd(ByteView msg, ByteView dst, std::size_t len) {
  std::size_t ell = (len + 31) / 32;
  Bytes dst_prime(dst.begin(), dst.end());
  dst_prime.push_back(static_cast<std::uint8_t>(dst.size()));
  Bytes m0(64, 0);
  m0.insert(m0.end(), msg.begin(), msg.end());
  m0.push_back(static_cast<std::uint8_t>(len >> 8));
  m0.push_back(static_cast<std::uint8_t>(len & 0xff));
  m0.push_back(0);
  m0.insert(m0.end(), dst_prime.begin(), dst_prime.end());
  std::uint8_t b0[32];
  SHA256(m0.data(), m0.size(), b0);
  Bytes out;
  std::uint8_t bi[32] = {};
  for (std::size_t i = 1; i <= ell; ++i) {
    Bytes mi(32);
    for (int j = 0; j < 32; ++j) mi[j] = b0[j] ^ (i == 1 ? 0 : bi[j]);
    mi.push_back(static_cast<std::uint8_t>(i));
    mi.insert(mi.end(), dst_prime.begin(), dst_prime.end());
    SHA256(mi.data(), mi.size(), bi);
    out.insert(out.end(), bi, bi + 32);
  }
  out.resize(len);
  return out;
}

std::pair<Z, Z> hash_to_field(ByteView msg, ByteView dst) {
  Bytes u = expand_message_xmd(msg, dst, 96);
  Z t[2];
  for (int i = 0; i < 2; ++i) {
    mpz_import(t[i].get_mpz_t(), 48, 1, 1, 0, 0, u.data() + 48 * i);
    t[i] = md(t[i]);
  }
  return {t[0], t[1]};
}

// Straight-line SVDW with Z = 1, following the RFC 9380 description.
P1 map_to_curve(const Z& u) {
  auto g = curve_rhs;
  static const Z c1 = g(1);
  static const Z c2 = md(-inv(2));
  static const Z c3 = [] {
    Z s = sqrt_fp(md(-curve_rhs(1) * 3));
    return (s % 2 == 1) ? Z(p() - s) : s;
  }();
  static const Z c4 = md(-4 * g(1) * inv(3));
  Z uu = md(u);
  Z tv1 = md(uu * uu * c1);
  Z tv2 = md(1 + tv1);
  tv1 = md(1 - tv1);
  Z tv3 = inv(md(tv1 * tv2));
  Z tv4 = md(uu * tv1 * tv3 * c3);
  Z x1 = md(c2 - tv4);
  Z x2 = md(c2 + tv4);
  Z x3 = md(tv2 * tv2 * tv3);
  x3 = md(x3 * x3 * c4 + 1);
  Z x;
  if (is_square(g(x1))) {
    x = x1;
  } else if (is_square(g(x2))) {
    x = x2;
  } else {
    x = x3;
  }
  Z y = sqrt_fp(g(x));
  if ((uu % 2) != (y % 2)) y = md(-y);
  return {x, y, false};
}

P1 base_to_g(const Z& t0, const Z& t1) { return add(map_to_curve(t0), map_to_curve(t1)); }

P1 hash_to_curve(ByteView msg, ByteView dst) {
  auto [u0, u1] = hash_to_field(msg, dst);
  return base_to_g(u0, u1);
}

Poly12 miller_loop(const P1& pt, const P2& q) {
  if (pt.inf || q.inf) return pone();
  static const Z loop = [] {
    Z u("4965661367192848881");
    return Z(6 * u + 2);
  }();
  Poly12 f = pone();
  P2 t = q;
  for (long i = static_cast<long>(mpz_sizeinbase(loop.get_mpz_t(), 2)) - 2; i >= 0; --i) {
    f = pmul(pmul(f, f), line(slope(t, t), t, pt));
    t = add(t, t);
    if (mpz_tstbit(loop.get_mpz_t(), i)) {
      f = pmul(f, line(slope(t, q), t, pt));
      t = add(t, q);
    }
  }
  P2 q1 = twist_frob(q);
  P2 q2 = twist_frob(q1);
  q2.y = f2(-q2.y.a, -q2.y.b);
  f = pmul(f, line(slope(t, q1), t, pt));
  t = add(t, q1);
  f = pmul(f, line(slope(t, q2), t, pt));
  return f;
}

Poly12 final_exponentiation(const Poly12& f) {
  // f^(p^6 - 1)
  Poly12 f6 = f;
  for (int i = 0; i < 6; ++i) f6 = pfrob(f6);
  Poly12 a = pmul(f6, pinv(f));
  // ^(p^2 + 1)
  a = pmul(pfrob(pfrob(a)), a);
  static const Z hard = [] {
    Z p2 = p() * p();
    return Z((p2 * p2 - p2 + 1) / r());
  }();
  return ppow(a, hard);
}

Poly12 pairing(const P1& pt, const P2& q) { return final_exponentiation(miller_loop(pt, q)); }

bool pairing_check(const std::vector<std::pair<P1, P2>>& pairs) {
  Poly12 f = pone();
  for (const auto& [a, b] : pairs) f = pmul(f, miller_loop(a, b));
  return final_exponentiation(f).is_one();
}

}  // namespace maprelay::crypto::reference
