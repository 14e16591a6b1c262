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

#include "k1guard/uint256.hpp"

#include "k1guard/error.hpp"

namespace k1guard {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

U256 U256::from_hex(std::string_view hex) {
  if (hex.size() != 64) {
    throw Error(Errc::InvalidInput, "expected 64 hex digits, got " +
                                        std::to_string(hex.size()));
  }
  U256 r;
  for (std::size_t i = 0; i < 64; ++i) {
    int v = hex_value(hex[i]);
    if (v < 0) {
      throw Error(Errc::InvalidInput,
                  "invalid hex digit at position " + std::to_string(i));
    }
    std::size_t nibble = 63 - i;
    r.limb[nibble / 16] |= static_cast<std::uint64_t>(v) << (4 * (nibble % 16));
  }
  return r;
}

U256 U256::from_bytes(std::span<const std::uint8_t, 32> be) {
  U256 r;
  for (std::size_t i = 0; i < 32; ++i) {
    std::size_t byte = 31 - i;
    r.limb[byte / 8] |= static_cast<std::uint64_t>(be[i]) << (8 * (byte % 8));
  }
  return r;
}

std::string U256::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(64, '0');
  for (std::size_t i = 0; i < 64; ++i) {
    std::size_t nibble = 63 - i;
    out[i] = kDigits[(limb[nibble / 16] >> (4 * (nibble % 16))) & 0xF];
  }
  return out;
}

std::array<std::uint8_t, 32> U256::to_bytes() const {
  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < 32; ++i) {
    std::size_t byte = 31 - i;
    out[i] = static_cast<std::uint8_t>(limb[byte / 8] >> (8 * (byte % 8)));
  }
  return out;
}

}  // namespace k1guard
