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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "k1guard/fp256.hpp"

namespace k1guard {

enum class Bank : std::uint8_t { R0, R1, Rt, BiaScratch };
enum class Lane : std::uint8_t { X, Y, Z };

inline constexpr unsigned kBankCount = 4;
inline constexpr unsigned kLaneCount = 3;

struct RegisterSlot {
  Bank bank;
  Lane lane;

  constexpr unsigned index() const {
    return static_cast<unsigned>(bank) * kLaneCount + static_cast<unsigned>(lane);
  }
  /// Register-file address: bank in the high bits, lane in the low two.
  constexpr unsigned address() const {
    return (static_cast<unsigned>(bank) << 2) | static_cast<unsigned>(lane);
  }

  friend constexpr bool operator==(const RegisterSlot&, const RegisterSlot&) = default;
};

std::string to_string(RegisterSlot slot);

/// Set of register slots as a 12-bit mask, iterated in (bank, lane) order.
class SlotSet {
 public:
  constexpr SlotSet() = default;

  static constexpr SlotSet of(RegisterSlot s) { return SlotSet().with(s); }
  static constexpr SlotSet bank(Bank b) {
    return of({b, Lane::X}).with({b, Lane::Y}).with({b, Lane::Z});
  }

  constexpr SlotSet with(RegisterSlot s) const {
    SlotSet r = *this;
    r.mask_ |= static_cast<std::uint16_t>(1u << s.index());
    return r;
  }
  constexpr SlotSet operator|(SlotSet o) const {
    SlotSet r;
    r.mask_ = mask_ | o.mask_;
    return r;
  }

  constexpr bool contains(RegisterSlot s) const { return (mask_ >> s.index()) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint16_t mask() const { return mask_; }

  /// Bit b set iff any lane of bank b is in the set, for R0, R1, Rt only.
  constexpr std::uint8_t bank_enables() const {
    std::uint8_t out = 0;
    for (unsigned b = 0; b < 3; ++b) {
      if ((mask_ >> (b * kLaneCount)) & 0x7u) out |= static_cast<std::uint8_t>(1u << b);
    }
    return out;
  }

  std::vector<RegisterSlot> slots() const;

  friend constexpr bool operator==(const SlotSet&, const SlotSet&) = default;

 private:
  std::uint16_t mask_ = 0;
};

enum class Unit : std::uint8_t { EcpaA, EcpaB, Bia, Ctrl };

std::string_view to_string(Unit unit) noexcept;

enum class Phase : std::uint8_t { Init, Ladder, Inversion };

struct TraceEvent {
  std::uint64_t cycle = 0;
  Unit unit = Unit::Ctrl;
  MaluOpcode opcode = MaluOpcode::Load;
  SlotSet reads;
  SlotSet writes;
  Phase phase = Phase::Init;
  /// Key bit being processed in the ladder phase; -1 elsewhere.
  std::int16_t bit_index = -1;
  /// Total Hamming weight of the values written by this event.
  std::uint32_t written_weight = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using OperationTrace = std::vector<TraceEvent>;

/// Data-independent skeleton of a trace: one byte per event packing
/// unit (2 bits), opcode (3 bits) and the write enables of R0/R1/Rt (3 bits).
/// Cycle stamps, read slots (mux selects) and values are dropped.
class ShapeDigest {
 public:
  void push(Unit unit, MaluOpcode opcode, std::uint8_t bank_enables);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::size_t size() const { return bytes_.size(); }
  bool empty() const { return bytes_.empty(); }

  /// FNV-1a 64 over bytes().
  std::uint64_t fingerprint() const;

  /// Index of the first differing entry, or the shorter length when one digest
  /// is a prefix of the other; npos when equal.
  std::size_t first_difference(const ShapeDigest& other) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const ShapeDigest&, const ShapeDigest&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

ShapeDigest trace_shape(const OperationTrace& trace);

/// One event per line: `cycle unit opcode reads→writes`, slot lists comma
/// separated, `-` for an empty list.
void write_trace(std::ostream& os, const OperationTrace& trace);
std::string format_event(const TraceEvent& event);

}  // namespace k1guard
