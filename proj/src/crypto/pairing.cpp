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

#include "maprelay/crypto/pairing.hpp"

#include <gmpxx.h>

#include "maprelay/crypto/counters.hpp"

namespace maprelay::crypto {

OpCounters& op_counters() {
  thread_local OpCounters c;
  return c;
}

namespace {

// 6u + 2 for u = 0x44e992b44a6909f1
constexpr Limbs kAteLoop = {0x9d797039be763ba8ULL, 0x1ULL, 0, 0};
constexpr std::uint64_t kU = 0x44e992b44a6909f1ULL;

struct Proj {
  Fp2 x, y, z;
};

struct Line {
  Fp2 a, b, c;  // a + b w + c w^3
};

// Tangent at T evaluated at P, and T <- 2T.
Line double_step(Proj& t, const Fp& xp, const Fp& yp) {
  Fp2 xx = t.x.square();
  Fp2 zz = t.z.square();
  Fp2 yy = t.y.square();
  Line l;
  l.a = (t.y * zz).dbl() * yp;
  Fp2 n = xx.dbl() + xx;  // 3X^2
  l.b = (n * t.z) * (-xp);
  l.c = n * t.x - (yy * t.z).dbl();
  Fp2 d = (t.y * t.z).dbl();
  Fp2 d2 = d.square();
  Fp2 d3 = d2 * d;
  Fp2 xd2 = t.x * d2;
  Fp2 a = n.square() * t.z - xd2.dbl();
  Proj r;
  r.x = a * d;
  r.y = n * (xd2 - a) - t.y * d3;
  r.z = d3 * t.z;
  t = r;
  return l;
}

// Chord through T and affine Q evaluated at P, and T <- T + Q.
Line add_step(Proj& t, const Fp2& xq, const Fp2& yq, const Fp& xp, const Fp& yp) {
  Fp2 n = yq * t.z - t.y;
  Fp2 d = xq * t.z - t.x;
  Line l;
  l.a = d * yp;
  l.b = n * (-xp);
  l.c = n * xq - d * yq;
  Fp2 d2 = d.square();
  Fp2 d3 = d2 * d;
  Fp2 xd2 = t.x * d2;
  Fp2 a = n.square() * t.z - d2 * (t.x + t.z * xq);
  Proj r;
  r.x = a * d;
  r.y = n * (xd2 - a) - t.y * d3;
  r.z = d3 * t.z;
  t = r;
  return l;
}

G2Affine twist_frobenius(const G2Affine& q) {
  const auto& k = frobenius_constants();
  return {q.x.conj() * k.twist_x, q.y.conj() * k.twist_y, false};
}

Fp12 pow_u(const Fp12& f) { return f.pow_u64(kU); }

}  // namespace

Fp12 miller_loop(const std::vector<std::pair<G1Affine, G2Affine>>& pairs) {
  struct State {
    Fp xp, yp;
    G2Affine q;
    Proj t;
  };
  std::vector<State> st;
  st.reserve(pairs.size());
  for (const auto& [p, q] : pairs) {
    if (p.infinity || q.infinity) continue;
    st.push_back({p.x, p.y, q, {q.x, q.y, Fp2::one()}});
  }
  Fp12 f = Fp12::one();
  if (st.empty()) return f;
  for (int i = limbs::bit_length(kAteLoop) - 2; i >= 0; --i) {
    f = f.square();
    for (auto& s : st) {
      Line l = double_step(s.t, s.xp, s.yp);
      f = f.mul_by_line(l.a, l.b, l.c);
    }
    if (limbs::bit(kAteLoop, i)) {
      for (auto& s : st) {
        Line l = add_step(s.t, s.q.x, s.q.y, s.xp, s.yp);
        f = f.mul_by_line(l.a, l.b, l.c);
      }
    }
  }
  for (auto& s : st) {
    G2Affine q1 = twist_frobenius(s.q);
    G2Affine q2 = twist_frobenius(q1);
    Line l = add_step(s.t, q1.x, q1.y, s.xp, s.yp);
    f = f.mul_by_line(l.a, l.b, l.c);
    l = add_step(s.t, q2.x, -q2.y, s.xp, s.yp);
    f = f.mul_by_line(l.a, l.b, l.c);
  }
  return f;
}

Fp12 final_exponentiation(const Fp12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 t1 = f.conj() * f.inverse();
  t1 = t1.frobenius().frobenius() * t1;
  // Hard part, addition chain for (p^4 - p^2 + 1) / r.
  Fp12 fp = t1.frobenius();
  Fp12 fp2 = fp.frobenius();
  Fp12 fp3 = fp2.frobenius();
  Fp12 fu = pow_u(t1);
  Fp12 fu2 = pow_u(fu);
  Fp12 fu3 = pow_u(fu2);
  Fp12 y3 = fu.frobenius();
  Fp12 fu2p = fu2.frobenius();
  Fp12 fu3p = fu3.frobenius();
  Fp12 y2 = fu2.frobenius().frobenius();
  Fp12 y0 = fp * fp2 * fp3;
  Fp12 y1 = t1.conj();
  Fp12 y5 = fu2.conj();
  y3 = y3.conj();
  Fp12 y4 = (fu * fu2p).conj();
  Fp12 y6 = (fu3 * fu3p).conj();
  Fp12 t0 = y6.square() * y4 * y5;
  Fp12 t2 = y3 * y5 * t0;
  t0 = t0 * y2;
  t2 = t2.square() * t0;
  t2 = t2.square();
  t0 = t2 * y1;
  t2 = t2 * y0;
  t0 = t0.square();
  return t0 * t2;
}

Fp12 final_exponentiation_naive(const Fp12& f) {
  mpz_class p(limbs::to_decimal(FpParams::kModulus));
  mpz_class r(limbs::to_decimal(FrParams::kModulus));
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), 12);
  e = (e - 1) / r;
  Fp12 acc = Fp12::one();
  for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = acc.square();
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * f;
  }
  return acc;
}

Fp12 pairing(const G1& p, const G2& q) {
  return final_exponentiation(miller_loop({{p.to_affine(), q.to_affine()}}));
}

bool pairing_check(const std::vector<std::pair<G1, G2>>& pairs) {
  auto& c = op_counters();
  c.pairing_checks += 1;
  c.pairing_pairs += pairs.size();
  std::vector<std::pair<G1Affine, G2Affine>> aff;
  aff.reserve(pairs.size());
  for (const auto& [p, q] : pairs) aff.emplace_back(p.to_affine(), q.to_affine());
  return final_exponentiation(miller_loop(aff)).is_one();
}

}  // namespace maprelay::crypto
