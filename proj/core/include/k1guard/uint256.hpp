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
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace k1guard {

/// Plain 256-bit unsigned integer, four 64-bit limbs, least significant limb
/// first. No modular semantics; FieldElement and Scalar256 build on top.
struct U256 {
  std::array<std::uint64_t, 4> limb{};

  static constexpr U256 from_u64(std::uint64_t v) { return U256{{v, 0, 0, 0}}; }

  /// Big-endian hex, exactly 64 digits, no prefix. Either letter case is
  /// accepted. Throws Error(InvalidInput) on anything else.
  static U256 from_hex(std::string_view hex);
  static U256 from_bytes(std::span<const std::uint8_t, 32> be);

  std::string to_hex() const;  // 64 lowercase digits
  std::array<std::uint8_t, 32> to_bytes() const;

  constexpr bool is_zero() const {
    return (limb[0] | limb[1] | limb[2] | limb[3]) == 0;
  }

  constexpr bool bit(unsigned i) const {
    return ((limb[i / 64] >> (i % 64)) & 1u) != 0;
  }

  constexpr void set_bit(unsigned i) { limb[i / 64] |= std::uint64_t{1} << (i % 64); }

  /// Index of the highest set bit plus one; 0 for zero.
  constexpr unsigned bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (limb[i] != 0) {
        return static_cast<unsigned>(i) * 64 + 64 - std::countl_zero(limb[i]);
      }
    }
    return 0;
  }

  constexpr unsigned popcount() const {
    return std::popcount(limb[0]) + std::popcount(limb[1]) +
           std::popcount(limb[2]) + std::popcount(limb[3]);
  }

  friend constexpr bool operator==(const U256&, const U256&) = default;

  friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] <=> b.limb[i];
    }
    return std::strong_ordering::equal;
  }
};

namespace wide {

using u128 = unsigned __int128;

/// r = a + b, returns the carry out (0 or 1).
constexpr std::uint64_t add(U256& r, const U256& a, const U256& b) {
  u128 acc = 0;
  for (int i = 0; i < 4; ++i) {
    acc += static_cast<u128>(a.limb[i]) + b.limb[i];
    r.limb[i] = static_cast<std::uint64_t>(acc);
    acc >>= 64;
  }
  return static_cast<std::uint64_t>(acc);
}

/// r = a - b, returns the borrow out (0 or 1).
constexpr std::uint64_t sub(U256& r, const U256& a, const U256& b) {
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a.limb[i]) - b.limb[i] - borrow;
    r.limb[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 127);
  }
  return borrow;
}

/// Shift right by one, shifting `top` into bit 255.
constexpr void shr1(U256& r, std::uint64_t top = 0) {
  r.limb[0] = (r.limb[0] >> 1) | (r.limb[1] << 63);
  r.limb[1] = (r.limb[1] >> 1) | (r.limb[2] << 63);
  r.limb[2] = (r.limb[2] >> 1) | (r.limb[3] << 63);
  r.limb[3] = (r.limb[3] >> 1) | (top << 63);
}

/// r = mask ? a : b, with mask all-ones or all-zeros.
constexpr U256 select(std::uint64_t mask, const U256& a, const U256& b) {
  U256 r;
  for (int i = 0; i < 4; ++i) r.limb[i] = (a.limb[i] & mask) | (b.limb[i] & ~mask);
  return r;
}

}  // namespace wide
}  // namespace k1guard
