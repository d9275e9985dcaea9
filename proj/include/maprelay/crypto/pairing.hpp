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

#include <utility>
#include <vector>

#include "maprelay/crypto/curve.hpp"

namespace maprelay::crypto {

// Optimal ate pairing on BN254, e: G1 x G2 -> GT.
Fp12 miller_loop(const std::vector<std::pair<G1Affine, G2Affine>>& pairs);
Fp12 final_exponentiation(const Fp12& f);
// Plain exponentiation by (p^12 - 1) / r. Test oracle only.
Fp12 final_exponentiation_naive(const Fp12& f);

Fp12 pairing(const G1& p, const G2& q);

// True iff prod e(P_i, Q_i) == 1.
bool pairing_check(const std::vector<std::pair<G1, G2>>& pairs);

}  // namespace maprelay::crypto
