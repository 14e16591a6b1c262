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

#include "k1guard/trace.hpp"

#include <algorithm>
#include <ostream>

namespace k1guard {

std::string to_string(RegisterSlot slot) {
  static constexpr std::string_view kBanks[] = {"R0", "R1", "Rt", "BIA"};
  static constexpr char kLanes[] = {'X', 'Y', 'Z'};
  std::string out(kBanks[static_cast<unsigned>(slot.bank)]);
  out.push_back('.');
  out.push_back(kLanes[static_cast<unsigned>(slot.lane)]);
  return out;
}

std::vector<RegisterSlot> SlotSet::slots() const {
  std::vector<RegisterSlot> out;
  for (unsigned b = 0; b < kBankCount; ++b) {
    for (unsigned l = 0; l < kLaneCount; ++l) {
      RegisterSlot s{static_cast<Bank>(b), static_cast<Lane>(l)};
      if (contains(s)) out.push_back(s);
    }
  }
  return out;
}

std::string_view to_string(Unit unit) noexcept {
  switch (unit) {
    case Unit::EcpaA: return "ECPA_A";
    case Unit::EcpaB: return "ECPA_B";
    case Unit::Bia: return "BIA";
    case Unit::Ctrl: return "CTRL";
  }
  return "?";
}

void ShapeDigest::push(Unit unit, MaluOpcode opcode, std::uint8_t bank_enables) {
  bytes_.push_back(static_cast<std::uint8_t>((static_cast<unsigned>(unit) << 6) |
                                             (static_cast<unsigned>(opcode) << 3) |
                                             (bank_enables & 0x7u)));
}

std::uint64_t ShapeDigest::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes_) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::size_t ShapeDigest::first_difference(const ShapeDigest& other) const {
  auto [a, b] = std::mismatch(bytes_.begin(), bytes_.end(), other.bytes_.begin(),
                              other.bytes_.end());
  if (a == bytes_.end() && b == other.bytes_.end()) return npos;
  return static_cast<std::size_t>(a - bytes_.begin());
}

ShapeDigest trace_shape(const OperationTrace& trace) {
  ShapeDigest d;
  for (const auto& e : trace) d.push(e.unit, e.opcode, e.writes.bank_enables());
  return d;
}

namespace {

void append_slots(std::string& out, SlotSet set) {
  if (set.empty()) {
    out.push_back('-');
    return;
  }
  bool first = true;
  for (RegisterSlot s : set.slots()) {
    if (!first) out.push_back(',');
    out += to_string(s);
    first = false;
  }
}

}  // namespace

std::string format_event(const TraceEvent& e) {
  std::string out = std::to_string(e.cycle);
  out.push_back(' ');
  out += to_string(e.unit);
  out.push_back(' ');
  out += to_string(e.opcode);
  out.push_back(' ');
  append_slots(out, e.reads);
  out += "→";
  append_slots(out, e.writes);
  return out;
}

void write_trace(std::ostream& os, const OperationTrace& trace) {
  for (const auto& e : trace) os << format_event(e) << '\n';
}

}  // namespace k1guard
