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

#include <cstdint>
#include <functional>
#include <string_view>

#include "k1guard/curve.hpp"
#include "k1guard/uint256.hpp"

namespace k1guard {

/// Nonzero 256-bit scalar. Not reduced modulo the group order.
class Scalar256 {
 public:
  /// Throws Error(InvalidInput) for zero.
  static Scalar256 from_u256(const U256& bits);
  static Scalar256 from_u64(std::uint64_t v) { return from_u256(U256::from_u64(v)); }
  /// Exactly 64 hex digits, leading zeros allowed.
  static Scalar256 from_hex(std::string_view hex) { return from_u256(U256::from_hex(hex)); }

  const U256& bits() const { return bits_; }
  /// Effective length t: bit t-1 is the most significant set bit.
  unsigned bit_length() const { return bit_length_; }
  bool bit(unsigned i) const { return bits_.bit(i); }

  std::string to_hex() const { return bits_.to_hex(); }

  friend bool operator==(const Scalar256&, const Scalar256&) = default;

 private:
  explicit Scalar256(const U256& bits) : bits_(bits), bit_length_(bits.bit_length()) {}

  U256 bits_;
  unsigned bit_length_;
};

struct LadderState {
  ProjectivePoint r0;
  ProjectivePoint r1;
  ProjectivePoint rt;  // identity throughout the two-register ladder
};

/// Called after the registers are committed for bit `bit_index`.
using LadderObserver = std::function<void(unsigned bit_index, const LadderState& state)>;

/// Montgomery ladder with the temporary register Rt. Every iteration performs
/// one addition and two doublings and loads R0, R1 and Rt together from the
/// pre-iteration values. Returns R0.
/// Throws Error(InvalidInput) if p is off the curve or the identity.
ProjectivePoint scalar_mul_hardened(const Scalar256& k, const ProjectivePoint& p,
                                    const LadderObserver& observer = {});

/// Classic two-register ladder. The doubling lands on Q1 or Q0 depending on
/// the key bit.
ProjectivePoint scalar_mul_baseline(const Scalar256& k, const ProjectivePoint& p,
                                    const LadderObserver& observer = {});

/// encode_pubkey(to_affine(scalar_mul_hardened(k, G))).
/// Throws Error(DegenerateKey) when k*G is the identity.
PublicKeyEncoding derive_pubkey(const Scalar256& k);

}  // namespace k1guard
