/*
 * Copyright (C) 2026 The k1guard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "k1guard/ladder.hpp"

#include "k1guard/error.hpp"

namespace k1guard {
namespace {

void require_ladder_input(const ProjectivePoint& p) {
  if (!is_on_curve(p)) throw Error(Errc::InvalidInput, "ladder input is not on the curve");
  if (p.is_identity()) throw Error(Errc::InvalidInput, "ladder input is the identity");
}

}  // namespace

Scalar256 Scalar256::from_u256(const U256& bits) {
  if (bits.is_zero()) throw Error(Errc::InvalidInput, "scalar must be nonzero");
  return Scalar256(bits);
}

ProjectivePoint scalar_mul_hardened(const Scalar256& k, const ProjectivePoint& p,
                                    const LadderObserver& observer) {
  require_ladder_input(p);

  LadderState s{p, point_double(p), ProjectivePoint::identity()};
  for (int i = static_cast<int>(k.bit_length()) - 2; i >= 0; --i) {
    ProjectivePoint sum = point_add_complete(s.r0, s.r1);
    ProjectivePoint dbl_r0 = point_double(s.r0);
    ProjectivePoint dbl_r1 = point_double(s.r1);
    if (k.bit(static_cast<unsigned>(i))) {
      s = {sum, dbl_r1, dbl_r0};
    } else {
      s = {dbl_r0, sum, dbl_r1};
    }
    if (observer) observer(static_cast<unsigned>(i), s);
  }
  return s.r0;
}

ProjectivePoint scalar_mul_baseline(const Scalar256& k, const ProjectivePoint& p,
                                    const LadderObserver& observer) {
  require_ladder_input(p);

  ProjectivePoint q0 = p;
  ProjectivePoint q1 = point_double(p);
  for (int i = static_cast<int>(k.bit_length()) - 2; i >= 0; --i) {
    if (k.bit(static_cast<unsigned>(i))) {
      q0 = point_add_complete(q0, q1);
      q1 = point_double(q1);
    } else {
      q1 = point_add_complete(q0, q1);
      q0 = point_double(q0);
    }
    if (observer) observer(static_cast<unsigned>(i), {q0, q1, ProjectivePoint::identity()});
  }
  return q0;
}

PublicKeyEncoding derive_pubkey(const Scalar256& k) {
  AffinePoint a = to_affine(scalar_mul_hardened(k, generator()));
  if (a.infinity) throw Error(Errc::DegenerateKey, "scalar multiple of G is the identity");
  return encode_pubkey(a);
}

}  // namespace k1guard
