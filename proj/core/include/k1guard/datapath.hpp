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
#include <string_view>

#include "k1guard/curve.hpp"
#include "k1guard/cycle_model.hpp"
#include "k1guard/ladder.hpp"
#include "k1guard/trace.hpp"

namespace k1guard {

/// Hardened: three banks R0/R1/Rt, ECPA_A adds, ECPA_B runs both doublings
/// back to back, and the controller loads all three banks in one commit.
/// Baseline: two banks, each unit writes its own destination bank as soon as
/// it finishes.
enum class Design : std::uint8_t { Hardened, Baseline };

std::string_view to_string(Design design) noexcept;

// Operand slots of the ECPA microprogram.
enum class EcpaOperand : std::uint8_t {
  X1, Y1, Z1, X2, Y2, Z2, T0, T1, T2, T3, T4, X3, Y3, Z3, B3,
};

inline constexpr std::size_t kEcpaOperandCount = 15;

struct EcpaMicroOp {
  MaluOpcode opcode;
  EcpaOperand dst;
  EcpaOperand lhs;
  EcpaOperand rhs;
};

inline constexpr std::size_t kEcpaProgramLength = 33;

/// The complete-addition sequence as executed by an ECPA unit.
const std::array<EcpaMicroOp, kEcpaProgramLength>& ecpa_microprogram();

/// Interprets ecpa_microprogram(); agrees bit for bit with point_add_complete.
ProjectivePoint ecpa_execute(const ProjectivePoint& p, const ProjectivePoint& q);

/// Cycles for one pass of the microprogram.
std::uint64_t ecpa_pass_cycles(const CycleConfig& cfg);

struct CycleBreakdown {
  std::uint64_t init = 0;
  std::uint64_t ladder = 0;
  std::uint64_t inversion = 0;
  std::uint64_t finalize = 0;
  std::uint32_t ladder_iterations = 0;
  std::uint32_t bia_steps = 0;

  std::uint64_t total() const { return init + ladder + inversion + finalize; }

  friend bool operator==(const CycleBreakdown&, const CycleBreakdown&) = default;
};

/// Closed-form cycle count for a scalar of bit length t whose inversion takes
/// `bia_steps` steps. simulate_scalar_mul() must agree with it exactly.
CycleBreakdown predicted_cycles(const CycleConfig& cfg, Design design, unsigned bit_length,
                                std::uint32_t bia_steps);

struct SimOptions {
  Design design = Design::Hardened;
  std::uint64_t frequency_hz = 250'000'000;
};

struct SimulationResult {
  AffinePoint affine;          // read back from Rt.X / Rt.Y
  ProjectivePoint projective;  // R0 when the ladder finishes
  OperationTrace trace;
  CycleBreakdown cycles;
  CycleReport report;
};

/// Runs the ladder on the modeled datapath, then the BIA inversion and the two
/// final multiplications in the reused R1/Rt lanes.
/// Throws Error(InvalidInput) for an off-curve or identity point, and
/// Error(InvalidConfig) for a bad cfg or zero frequency.
SimulationResult simulate_scalar_mul(const Scalar256& k, const ProjectivePoint& p,
                                     const CycleConfig& cfg, const SimOptions& options = {});

/// Controller-only run: the same event sequence simulate_scalar_mul() emits,
/// without evaluating the datapath. Values are not computed, so every
/// written_weight is zero and the inversion is charged zero steps.
OperationTrace schedule_scalar_mul(const Scalar256& k, const CycleConfig& cfg,
                                   Design design = Design::Hardened);

}  // namespace k1guard
