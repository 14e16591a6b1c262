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

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "k1guard/fp256.hpp"

namespace k1guard {

/// b in y^2 = x^3 + b, and the b3 = 3b constant used by the complete adder.
inline constexpr std::uint64_t kCurveB = 7;
inline constexpr std::uint64_t kCurveB3 = 3 * kCurveB;

/// Homogeneous projective point (X : Y : Z) on Y^2 Z = X^3 + 7 Z^3.
/// The identity is (0 : 1 : 0).
struct ProjectivePoint {
  FieldElement x;
  FieldElement y;
  FieldElement z;

  static constexpr ProjectivePoint identity() {
    return {FieldElement{}, FieldElement::from_u64(1), FieldElement{}};
  }

  constexpr bool is_identity() const { return z.is_zero(); }

  /// Representation equality, not group equality. See affine_equal().
  friend constexpr bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

struct AffinePoint {
  FieldElement x;
  FieldElement y;
  bool infinity = false;

  static constexpr AffinePoint at_infinity() { return {FieldElement{}, FieldElement{}, true}; }

  friend constexpr bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

/// Uncompressed SEC1 layout: 0x04 || x || y, coordinates big-endian.
using PublicKeyEncoding = std::array<std::uint8_t, 65>;

const AffinePoint& generator_affine();
ProjectivePoint generator();

ProjectivePoint from_affine(const AffinePoint& a);

/// Complete addition for a = 0 short Weierstrass curves. Straight-line: the
/// same 33 field operations run for every pair of inputs, including P == Q,
/// P == -Q and the identity.
ProjectivePoint point_add_complete(const ProjectivePoint& p, const ProjectivePoint& q,
                                   MaluRecorder* rec = nullptr);

/// point_add_complete(p, p).
ProjectivePoint point_double(const ProjectivePoint& p, MaluRecorder* rec = nullptr);

ProjectivePoint negate(const ProjectivePoint& p);

/// Z == 0 maps to the infinity-flagged point; otherwise one BIA inversion of Z.
AffinePoint to_affine(const ProjectivePoint& p, MaluRecorder* rec = nullptr);

/// Y^2 Z == X^3 + 7 Z^3 and not (Y == 0 and Z == 0).
bool is_on_curve(const ProjectivePoint& p);
bool is_on_curve(const AffinePoint& a);

/// Group equality through to_affine().
bool affine_equal(const ProjectivePoint& p, const ProjectivePoint& q);

/// Throws Error(NotEncodable) for the point at infinity.
PublicKeyEncoding encode_pubkey(const AffinePoint& a);
/// Throws Error(MalformedKey) on a bad prefix, out-of-range coordinate, or a
/// point off the curve.
AffinePoint decode_pubkey(std::span<const std::uint8_t> bytes);

std::string pubkey_to_hex(const PublicKeyEncoding& key);
/// 130 hex digits. Throws Error(MalformedKey) if the text is not hex of that
/// length, and whatever decode_pubkey throws otherwise.
PublicKeyEncoding pubkey_from_hex(std::string_view hex);

}  // namespace k1guard
