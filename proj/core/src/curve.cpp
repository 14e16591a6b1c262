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

#include "k1guard/curve.hpp"

#include <algorithm>

#include "k1guard/error.hpp"

namespace k1guard {
namespace {

const FieldElement kB = FieldElement::from_u64(kCurveB);
const FieldElement kB3 = FieldElement::from_u64(kCurveB3);

}  // namespace

const AffinePoint& generator_affine() {
  static const AffinePoint g{
      FieldElement::from_hex("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"),
      FieldElement::from_hex("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8"),
      false};
  return g;
}

ProjectivePoint generator() { return from_affine(generator_affine()); }

ProjectivePoint from_affine(const AffinePoint& a) {
  if (a.infinity) return ProjectivePoint::identity();
  return {a.x, a.y, FieldElement::from_u64(1)};
}

ProjectivePoint point_add_complete(const ProjectivePoint& p, const ProjectivePoint& q,
                                   MaluRecorder* rec) {
  const FieldElement& x1 = p.x;
  const FieldElement& y1 = p.y;
  const FieldElement& z1 = p.z;
  const FieldElement& x2 = q.x;
  const FieldElement& y2 = q.y;
  const FieldElement& z2 = q.z;

  FieldElement t0 = mul_mod(x1, x2, rec);
  FieldElement t1 = mul_mod(y1, y2, rec);
  FieldElement t2 = mul_mod(z1, z2, rec);
  FieldElement t3 = add_mod(x1, y1, rec);
  FieldElement t4 = add_mod(x2, y2, rec);
  t3 = mul_mod(t3, t4, rec);
  t4 = add_mod(t0, t1, rec);
  t3 = sub_mod(t3, t4, rec);
  t4 = add_mod(y1, z1, rec);
  FieldElement x3 = add_mod(y2, z2, rec);
  t4 = mul_mod(t4, x3, rec);
  x3 = add_mod(t1, t2, rec);
  t4 = sub_mod(t4, x3, rec);
  x3 = add_mod(x1, z1, rec);
  FieldElement y3 = add_mod(x2, z2, rec);
  x3 = mul_mod(x3, y3, rec);
  y3 = add_mod(t0, t2, rec);
  y3 = sub_mod(x3, y3, rec);
  x3 = add_mod(t0, t0, rec);
  t0 = add_mod(x3, t0, rec);
  t2 = mul_mod(kB3, t2, rec);
  FieldElement z3 = add_mod(t1, t2, rec);
  t1 = sub_mod(t1, t2, rec);
  y3 = mul_mod(kB3, y3, rec);
  x3 = mul_mod(t4, y3, rec);
  t2 = mul_mod(t3, t1, rec);
  x3 = sub_mod(t2, x3, rec);
  y3 = mul_mod(y3, t0, rec);
  t1 = mul_mod(t1, z3, rec);
  y3 = add_mod(t1, y3, rec);
  t0 = mul_mod(t0, t3, rec);
  z3 = mul_mod(z3, t4, rec);
  z3 = add_mod(z3, t0, rec);

  return {x3, y3, z3};
}

ProjectivePoint point_double(const ProjectivePoint& p, MaluRecorder* rec) {
  return point_add_complete(p, p, rec);
}

ProjectivePoint negate(const ProjectivePoint& p) {
  return {p.x, sub_mod(FieldElement{}, p.y), p.z};
}

AffinePoint to_affine(const ProjectivePoint& p, MaluRecorder* rec) {
  if (p.z.is_zero()) return AffinePoint::at_infinity();
  FieldElement r = inv_mod(p.z, rec);
  return {mul_mod(p.x, r, rec), mul_mod(p.y, r, rec), false};
}

bool is_on_curve(const ProjectivePoint& p) {
  if (p.y.is_zero() && p.z.is_zero()) return false;
  FieldElement lhs = mul_mod(mul_mod(p.y, p.y), p.z);
  FieldElement z3 = mul_mod(mul_mod(p.z, p.z), p.z);
  FieldElement rhs = add_mod(mul_mod(mul_mod(p.x, p.x), p.x), mul_mod(kB, z3));
  return lhs == rhs;
}

bool is_on_curve(const AffinePoint& a) {
  if (a.infinity) return true;
  return is_on_curve(from_affine(a));
}

bool affine_equal(const ProjectivePoint& p, const ProjectivePoint& q) {
  return to_affine(p) == to_affine(q);
}

PublicKeyEncoding encode_pubkey(const AffinePoint& a) {
  if (a.infinity) throw Error(Errc::NotEncodable, "point at infinity has no encoding");
  PublicKeyEncoding out{};
  out[0] = 0x04;
  auto x = a.x.to_bytes();
  auto y = a.y.to_bytes();
  std::copy(x.begin(), x.end(), out.begin() + 1);
  std::copy(y.begin(), y.end(), out.begin() + 33);
  return out;
}

AffinePoint decode_pubkey(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != 65) {
    throw Error(Errc::MalformedKey, "public key must be 65 bytes, got " +
                                        std::to_string(bytes.size()));
  }
  if (bytes[0] != 0x04) throw Error(Errc::MalformedKey, "public key prefix is not 0x04");

  U256 x = U256::from_bytes(bytes.subspan<1, 32>());
  U256 y = U256::from_bytes(bytes.subspan<33, 32>());
  if (x >= kFieldPrime || y >= kFieldPrime) {
    throw Error(Errc::MalformedKey, "public key coordinate out of range");
  }
  AffinePoint a{FieldElement::from_u256(x), FieldElement::from_u256(y), false};
  if (!is_on_curve(a)) throw Error(Errc::MalformedKey, "public key is not on the curve");
  return a;
}

std::string pubkey_to_hex(const PublicKeyEncoding& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(130);
  for (std::uint8_t b : key) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

PublicKeyEncoding pubkey_from_hex(std::string_view hex) {
  if (hex.size() != 130) {
    throw Error(Errc::MalformedKey, "public key hex must be 130 digits");
  }
  PublicKeyEncoding out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t byte = 0;
    for (char c : hex.substr(2 * i, 2)) {
      int v = (c >= '0' && c <= '9')   ? c - '0'
              : (c >= 'a' && c <= 'f') ? c - 'a' + 10
              : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                       : -1;
      if (v < 0) throw Error(Errc::MalformedKey, "public key hex has a non-hex digit");
      byte = static_cast<std::uint8_t>((byte << 4) | v);
    }
    out[i] = byte;
  }
  decode_pubkey(out);
  return out;
}

}  // namespace k1guard
