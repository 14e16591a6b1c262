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

#include "k1guard/fp256.hpp"

#include "k1guard/error.hpp"

namespace k1guard {
namespace {

constexpr U256 kZero{};

inline void emit(MaluRecorder* rec, MaluOpcode op, std::uint32_t iterations = 1) {
  if (rec != nullptr) rec->record(MaluEvent{op, iterations});
}

// x + y mod p for canonical x, y. Both candidates are always computed.
inline U256 add_reduce(const U256& x, const U256& y) {
  U256 sum, reduced;
  std::uint64_t carry = wide::add(sum, x, y);
  std::uint64_t borrow = wide::sub(reduced, sum, kFieldPrime);
  std::uint64_t take_reduced = carry | (borrow ^ 1u);
  return wide::select(0 - take_reduced, reduced, sum);
}

inline U256 sub_reduce(const U256& x, const U256& y) {
  U256 diff, wrapped;
  std::uint64_t borrow = wide::sub(diff, x, y);
  wide::add(wrapped, diff, wide::select(0 - borrow, kFieldPrime, kZero));
  return wrapped;
}

inline U256 half_reduce(const U256& x) {
  U256 r;
  std::uint64_t odd = x.limb[0] & 1u;
  std::uint64_t carry = wide::add(r, x, wide::select(0 - odd, kFieldPrime, kZero));
  wide::shr1(r, carry);
  return r;
}

}  // namespace

std::string_view to_string(MaluOpcode op) noexcept {
  switch (op) {
    case MaluOpcode::Add: return "ADD";
    case MaluOpcode::Sub: return "SUB";
    case MaluOpcode::Mul: return "MUL";
    case MaluOpcode::Inv: return "INV";
    case MaluOpcode::Shift: return "SHIFT";
    case MaluOpcode::Load: return "LOAD";
  }
  return "?";
}

std::vector<MaluOpcode> MaluLog::opcodes() const {
  std::vector<MaluOpcode> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.opcode);
  return out;
}

FieldElement FieldElement::from_u256(const U256& v) {
  if (v >= kFieldPrime) {
    throw Error(Errc::InvalidInput, "value is not a canonical field element");
  }
  return FieldElement(v);
}

FieldElement FieldElement::from_hex(std::string_view hex) {
  return from_u256(U256::from_hex(hex));
}

FieldElement FieldElement::from_bytes(std::span<const std::uint8_t, 32> be) {
  return from_u256(U256::from_bytes(be));
}

FieldElement add_mod(const FieldElement& a, const FieldElement& b, MaluRecorder* rec) {
  emit(rec, MaluOpcode::Add);
  return FieldElement::from_u256(add_reduce(a.value(), b.value()));
}

FieldElement sub_mod(const FieldElement& a, const FieldElement& b, MaluRecorder* rec) {
  emit(rec, MaluOpcode::Sub);
  return FieldElement::from_u256(sub_reduce(a.value(), b.value()));
}

FieldElement half_mod(const FieldElement& a, MaluRecorder* rec) {
  emit(rec, MaluOpcode::Shift);
  return FieldElement::from_u256(half_reduce(a.value()));
}

FieldElement mul_mod(const FieldElement& a, const FieldElement& b, MaluRecorder* rec) {
  const U256& multiplicand = a.value();
  const U256& multiplier = b.value();
  U256 acc{};
  std::uint32_t iterations = 0;
  for (int i = 255; i >= 0; --i) {
    acc = add_reduce(acc, acc);
    std::uint64_t bit = (multiplier.limb[i / 64] >> (i % 64)) & 1u;
    acc = add_reduce(acc, wide::select(0 - bit, multiplicand, kZero));
    ++iterations;
  }
  emit(rec, MaluOpcode::Mul, iterations);
  return FieldElement::from_u256(acc);
}

InversionResult binary_inverse(const FieldElement& z) {
  if (z.is_zero()) throw Error(Errc::NonInvertible, "zero has no inverse mod p");

  const U256 one = U256::from_u64(1);
  U256 u = z.value();
  U256 v = kFieldPrime;
  U256 x1 = one;
  U256 x2{};
  std::uint32_t steps = 0;

  while (u != one && v != one) {
    while ((u.limb[0] & 1u) == 0) {
      wide::shr1(u);
      x1 = half_reduce(x1);
      ++steps;
    }
    while ((v.limb[0] & 1u) == 0) {
      wide::shr1(v);
      x2 = half_reduce(x2);
      ++steps;
    }
    if (u >= v) {
      wide::sub(u, u, v);
      x1 = sub_reduce(x1, x2);
    } else {
      wide::sub(v, v, u);
      x2 = sub_reduce(x2, x1);
    }
    ++steps;
  }
  return {FieldElement::from_u256(u == one ? x1 : x2), steps};
}

FieldElement inv_mod(const FieldElement& z, MaluRecorder* rec) {
  InversionResult r = binary_inverse(z);
  emit(rec, MaluOpcode::Inv, r.steps);
  return r.inverse;
}

}  // namespace k1guard
