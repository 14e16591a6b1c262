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

// Reference arithmetic for tests, built on GMP and the textbook affine
// chord-and-tangent formulas. Deliberately shares no code path with the
// library's shift-and-add field or the complete projective adder.

#include <gmpxx.h>

#include <cstdint>
#include <random>

#include "k1guard/curve.hpp"
#include "k1guard/ladder.hpp"
#include "k1guard/uint256.hpp"

namespace k1guard::oracle {

const mpz_class& prime();
/// Group order of secp256k1 (SEC 2), used only to build test cases.
const mpz_class& group_order();

mpz_class to_mpz(const U256& v);
U256 from_mpz(const mpz_class& v);  // v must be in [0, 2^256)

mpz_class mod_add(const mpz_class& a, const mpz_class& b);
mpz_class mod_sub(const mpz_class& a, const mpz_class& b);
mpz_class mod_mul(const mpz_class& a, const mpz_class& b);
mpz_class mod_inv(const mpz_class& a);

struct Point {
  mpz_class x;
  mpz_class y;
  bool infinity = true;
};

Point generator();
Point negate(const Point& p);
Point add(const Point& p, const Point& q);  // special-cases P == Q and P == -Q
Point dbl(const Point& p);
/// Right-to-left double-and-add; k may be any non-negative integer.
Point multiply(const mpz_class& k, const Point& p);
bool on_curve(const Point& p);

AffinePoint to_affine_point(const Point& p);
Point from_affine_point(const AffinePoint& a);

/// Uniform value in [0, p).
FieldElement random_field(std::mt19937_64& rng);
/// Uniform 256-bit scalar with bit 255 set.
Scalar256 random_full_scalar(std::mt19937_64& rng);

}  // namespace k1guard::oracle
