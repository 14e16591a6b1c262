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
#include <vector>

#include "k1guard/uint256.hpp"

namespace k1guard {

/// p = 2^256 - 2^32 - 977
inline constexpr U256 kFieldPrime{{0xFFFFFFFEFFFFFC2Full, 0xFFFFFFFFFFFFFFFFull,
                                   0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull}};

/// Operation classes of the modular arithmetic unit.
enum class MaluOpcode : std::uint8_t { Add, Sub, Mul, Inv, Shift, Load };

inline constexpr std::size_t kMaluOpcodeCount = 6;

std::string_view to_string(MaluOpcode op) noexcept;

struct MaluEvent {
  MaluOpcode opcode;
  /// Inner-loop iterations the operation executed: 256 for Mul, the number of
  /// shift/subtract steps for Inv, 1 otherwise.
  std::uint32_t iterations;
};

/// Receives one event per public field operation. Not thread-safe; use one
/// recorder per execution context.
class MaluRecorder {
 public:
  virtual ~MaluRecorder() = default;
  virtual void record(const MaluEvent& event) = 0;
};

class MaluLog final : public MaluRecorder {
 public:
  void record(const MaluEvent& event) override { events.push_back(event); }

  std::vector<MaluOpcode> opcodes() const;

  std::vector<MaluEvent> events;
};

/// Canonical residue modulo kFieldPrime.
class FieldElement {
 public:
  constexpr FieldElement() = default;

  static constexpr FieldElement from_u64(std::uint64_t v) {
    return FieldElement(U256::from_u64(v));
  }
  /// Throws Error(InvalidInput) unless v < p.
  static FieldElement from_u256(const U256& v);
  /// 64 hex digits, big-endian; value must be < p.
  static FieldElement from_hex(std::string_view hex);
  static FieldElement from_bytes(std::span<const std::uint8_t, 32> be);

  constexpr const U256& value() const { return value_; }
  constexpr bool is_zero() const { return value_.is_zero(); }

  std::string to_hex() const { return value_.to_hex(); }
  std::array<std::uint8_t, 32> to_bytes() const { return value_.to_bytes(); }

  friend constexpr bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  explicit constexpr FieldElement(const U256& v) : value_(v) {}

  U256 value_{};
};

FieldElement add_mod(const FieldElement& a, const FieldElement& b,
                     MaluRecorder* rec = nullptr);
FieldElement sub_mod(const FieldElement& a, const FieldElement& b,
                     MaluRecorder* rec = nullptr);

/// Bit-serial shift-and-add multiplication, MSB first, with a conditional
/// subtraction of p after every doubling and every accumulate. Always runs
/// 256 iterations and selects reduction candidates by mask.
FieldElement mul_mod(const FieldElement& a, const FieldElement& b,
                     MaluRecorder* rec = nullptr);

/// a / 2 mod p.
FieldElement half_mod(const FieldElement& a, MaluRecorder* rec = nullptr);

struct InversionResult {
  FieldElement inverse;
  std::uint32_t steps;  // halvings plus subtractions
};

/// Binary extended-GCD inversion using only additions, subtractions and
/// right shifts. Iteration count depends on the value.
/// Throws Error(NonInvertible) for zero.
InversionResult binary_inverse(const FieldElement& z);

FieldElement inv_mod(const FieldElement& z, MaluRecorder* rec = nullptr);

}  // namespace k1guard
