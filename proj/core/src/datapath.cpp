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

#include "k1guard/datapath.hpp"

#include <algorithm>
#include <iterator>

#include "k1guard/error.hpp"

namespace k1guard {
namespace {

using Op = MaluOpcode;
using V = EcpaOperand;

constexpr std::array<EcpaMicroOp, kEcpaProgramLength> kProgram{{
    {Op::Mul, V::T0, V::X1, V::X2}, {Op::Mul, V::T1, V::Y1, V::Y2},
    {Op::Mul, V::T2, V::Z1, V::Z2}, {Op::Add, V::T3, V::X1, V::Y1},
    {Op::Add, V::T4, V::X2, V::Y2}, {Op::Mul, V::T3, V::T3, V::T4},
    {Op::Add, V::T4, V::T0, V::T1}, {Op::Sub, V::T3, V::T3, V::T4},
    {Op::Add, V::T4, V::Y1, V::Z1}, {Op::Add, V::X3, V::Y2, V::Z2},
    {Op::Mul, V::T4, V::T4, V::X3}, {Op::Add, V::X3, V::T1, V::T2},
    {Op::Sub, V::T4, V::T4, V::X3}, {Op::Add, V::X3, V::X1, V::Z1},
    {Op::Add, V::Y3, V::X2, V::Z2}, {Op::Mul, V::X3, V::X3, V::Y3},
    {Op::Add, V::Y3, V::T0, V::T2}, {Op::Sub, V::Y3, V::X3, V::Y3},
    {Op::Add, V::X3, V::T0, V::T0}, {Op::Add, V::T0, V::X3, V::T0},
    {Op::Mul, V::T2, V::B3, V::T2}, {Op::Add, V::Z3, V::T1, V::T2},
    {Op::Sub, V::T1, V::T1, V::T2}, {Op::Mul, V::Y3, V::B3, V::Y3},
    {Op::Mul, V::X3, V::T4, V::Y3}, {Op::Mul, V::T2, V::T3, V::T1},
    {Op::Sub, V::X3, V::T2, V::X3}, {Op::Mul, V::Y3, V::Y3, V::T0},
    {Op::Mul, V::T1, V::T1, V::Z3}, {Op::Add, V::Y3, V::T1, V::Y3},
    {Op::Mul, V::T0, V::T0, V::T3}, {Op::Mul, V::Z3, V::Z3, V::T4},
    {Op::Add, V::Z3, V::Z3, V::T0},
}};

using OperandFile = std::array<FieldElement, kEcpaOperandCount>;

constexpr std::size_t idx(EcpaOperand v) { return static_cast<std::size_t>(v); }

OperandFile load_operands(const ProjectivePoint& p, const ProjectivePoint& q) {
  OperandFile f{};
  f[idx(V::X1)] = p.x;
  f[idx(V::Y1)] = p.y;
  f[idx(V::Z1)] = p.z;
  f[idx(V::X2)] = q.x;
  f[idx(V::Y2)] = q.y;
  f[idx(V::Z2)] = q.z;
  f[idx(V::B3)] = FieldElement::from_u64(kCurveB3);
  return f;
}

void step(OperandFile& f, const EcpaMicroOp& op) {
  const FieldElement& a = f[idx(op.lhs)];
  const FieldElement& b = f[idx(op.rhs)];
  switch (op.opcode) {
    case Op::Add: f[idx(op.dst)] = add_mod(a, b); break;
    case Op::Sub: f[idx(op.dst)] = sub_mod(a, b); break;
    case Op::Mul: f[idx(op.dst)] = mul_mod(a, b); break;
    default: break;
  }
}

// Which bank lane feeds an input operand, given the banks muxed onto the
// P and Q ports.
bool input_slot(EcpaOperand v, Bank p_bank, Bank q_bank, RegisterSlot& out) {
  switch (v) {
    case V::X1: out = {p_bank, Lane::X}; return true;
    case V::Y1: out = {p_bank, Lane::Y}; return true;
    case V::Z1: out = {p_bank, Lane::Z}; return true;
    case V::X2: out = {q_bank, Lane::X}; return true;
    case V::Y2: out = {q_bank, Lane::Y}; return true;
    case V::Z2: out = {q_bank, Lane::Z}; return true;
    default: return false;
  }
}

std::uint32_t weight(const FieldElement& v) { return v.value().popcount(); }

std::uint32_t weight(const ProjectivePoint& p) {
  return weight(p.x) + weight(p.y) + weight(p.z);
}

class Engine {
 public:
  Engine(const CycleConfig& cfg, Design design, bool evaluate)
      : cfg_(cfg), design_(design), evaluate_(evaluate), pass_(ecpa_pass_cycles(cfg)) {}

  void run(const Scalar256& k, const ProjectivePoint& p) {
    const std::uint64_t overhead = cfg_.cycles_control_overhead_per_iteration;

    // R0 <- P; R1 <- 2P.
    reg(Bank::R0) = p;
    reg(Bank::Rt) = ProjectivePoint::identity();
    emit({0, Unit::Ctrl, Op::Load, {}, SlotSet::bank(Bank::R0), Phase::Init, -1,
          evaluate_ ? weight(p) : 0});
    ProjectivePoint two_p =
        ecpa_pass(Unit::EcpaB, Bank::R0, Bank::R0, overhead, Phase::Init, -1, trace);
    clock_ = overhead + pass_;
    reg(Bank::R1) = two_p;
    emit({clock_, Unit::Ctrl, Op::Load, {}, SlotSet::bank(Bank::R1), Phase::Init, -1,
          evaluate_ ? weight(two_p) : 0});
    clock_ += overhead;
    cycles.init = clock_;

    const std::uint64_t ladder_start = clock_;
    for (int i = static_cast<int>(k.bit_length()) - 2; i >= 0; --i) {
      bool bit = k.bit(static_cast<unsigned>(i));
      auto bit_index = static_cast<std::int16_t>(i);
      if (design_ == Design::Hardened) {
        hardened_iteration(bit, bit_index);
      } else {
        baseline_iteration(bit, bit_index);
      }
      ++cycles.ladder_iterations;
    }
    cycles.ladder = clock_ - ladder_start;
    projective = reg(Bank::R0);

    inversion();
  }

  OperationTrace trace;
  CycleBreakdown cycles;
  ProjectivePoint projective;
  AffinePoint affine;

 private:
  ProjectivePoint& reg(Bank b) { return banks_[static_cast<std::size_t>(b)]; }

  void emit(const TraceEvent& e) { trace.push_back(e); }

  // One pass of the microprogram on `unit`, operands muxed from p_bank and
  // q_bank. Events go to `out`; returns the computed point.
  ProjectivePoint ecpa_pass(Unit unit, Bank p_bank, Bank q_bank, std::uint64_t start,
                            Phase phase, std::int16_t bit_index, OperationTrace& out) {
    OperandFile f{};
    if (evaluate_) f = load_operands(reg(p_bank), reg(q_bank));
    std::uint64_t cycle = start;
    for (const EcpaMicroOp& op : kProgram) {
      TraceEvent e;
      e.cycle = cycle;
      e.unit = unit;
      e.opcode = op.opcode;
      e.phase = phase;
      e.bit_index = bit_index;
      RegisterSlot s{};
      if (input_slot(op.lhs, p_bank, q_bank, s)) e.reads = e.reads.with(s);
      if (input_slot(op.rhs, p_bank, q_bank, s)) e.reads = e.reads.with(s);
      out.push_back(e);
      if (evaluate_) step(f, op);
      cycle += cfg_.cost(op.opcode);
    }
    return {f[idx(V::X3)], f[idx(V::Y3)], f[idx(V::Z3)]};
  }

  void merge_into_trace(const OperationTrace& a, const OperationTrace& b) {
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(trace),
               [](const TraceEvent& x, const TraceEvent& y) { return x.cycle < y.cycle; });
  }

  // k_i = 1: R0 <- R0 + R1, R1 <- 2R1, Rt <- 2R0
  // k_i = 0: R1 <- R0 + R1, R0 <- 2R0, Rt <- 2R1
  void hardened_iteration(bool bit, std::int16_t bit_index) {
    const std::uint64_t start = clock_;
    const Bank first_double = bit ? Bank::R1 : Bank::R0;
    const Bank second_double = bit ? Bank::R0 : Bank::R1;

    unit_a_.clear();
    unit_b_.clear();
    ProjectivePoint sum =
        ecpa_pass(Unit::EcpaA, Bank::R0, Bank::R1, start, Phase::Ladder, bit_index, unit_a_);
    ProjectivePoint dbl1 = ecpa_pass(Unit::EcpaB, first_double, first_double, start,
                                     Phase::Ladder, bit_index, unit_b_);
    ProjectivePoint dbl2 = ecpa_pass(Unit::EcpaB, second_double, second_double, start + pass_,
                                     Phase::Ladder, bit_index, unit_b_);
    merge_into_trace(unit_a_, unit_b_);

    const std::uint64_t unit_a_cycles = pass_;
    const std::uint64_t unit_b_cycles = 2 * pass_;
    const std::uint64_t done = start + std::max(unit_a_cycles, unit_b_cycles);
    if (bit) {
      reg(Bank::R0) = sum;
      reg(Bank::R1) = dbl1;
    } else {
      reg(Bank::R1) = sum;
      reg(Bank::R0) = dbl1;
    }
    reg(Bank::Rt) = dbl2;
    emit({done, Unit::Ctrl, Op::Load, {},
          SlotSet::bank(Bank::R0) | SlotSet::bank(Bank::R1) | SlotSet::bank(Bank::Rt),
          Phase::Ladder, bit_index,
          evaluate_ ? weight(sum) + weight(dbl1) + weight(dbl2) : 0});
    clock_ = done + cfg_.cycles_control_overhead_per_iteration;
  }

  // k_i = 1: Q0 <- Q0 + Q1, Q1 <- 2Q1
  // k_i = 0: Q1 <- Q0 + Q1, Q0 <- 2Q0
  void baseline_iteration(bool bit, std::int16_t bit_index) {
    const std::uint64_t start = clock_;
    const Bank sum_dest = bit ? Bank::R0 : Bank::R1;
    const Bank dbl_bank = bit ? Bank::R1 : Bank::R0;

    unit_a_.clear();
    unit_b_.clear();
    ProjectivePoint sum =
        ecpa_pass(Unit::EcpaA, Bank::R0, Bank::R1, start, Phase::Ladder, bit_index, unit_a_);
    ProjectivePoint dbl =
        ecpa_pass(Unit::EcpaB, dbl_bank, dbl_bank, start, Phase::Ladder, bit_index, unit_b_);
    merge_into_trace(unit_a_, unit_b_);

    const std::uint64_t done = start + pass_;
    reg(sum_dest) = sum;
    emit({done, Unit::EcpaA, Op::Load, {}, SlotSet::bank(sum_dest), Phase::Ladder, bit_index,
          evaluate_ ? weight(sum) : 0});
    reg(dbl_bank) = dbl;
    emit({done, Unit::EcpaB, Op::Load, {}, SlotSet::bank(dbl_bank), Phase::Ladder, bit_index,
          evaluate_ ? weight(dbl) : 0});
    clock_ = done + cfg_.cycles_control_overhead_per_iteration;
  }

  // The BIA works in R1.X (u), R1.Y (v), R1.Z (x1) and Rt.Z (x2), latches the
  // inverse in BIA.X, and leaves the affine result in Rt.X / Rt.Y.
  void inversion() {
    const std::uint64_t start = clock_;
    const SlotSet working = SlotSet::of({Bank::R1, Lane::X})
                                .with({Bank::R1, Lane::Y})
                                .with({Bank::R1, Lane::Z})
                                .with({Bank::Rt, Lane::Z});
    const RegisterSlot latch{Bank::BiaScratch, Lane::X};

    FieldElement z = reg(Bank::R0).z;
    FieldElement r{};
    std::uint32_t steps = 0;
    if (evaluate_ && !z.is_zero()) {
      InversionResult inv = binary_inverse(z);
      r = inv.inverse;
      steps = inv.steps;
    }
    // u = z, v = p, x1 = 1, x2 = 0
    const std::uint32_t load_weight = evaluate_ ? weight(z) + kFieldPrime.popcount() + 1 : 0;
    emit({clock_, Unit::Bia, Op::Load, SlotSet::of({Bank::R0, Lane::Z}), working,
          Phase::Inversion, -1, load_weight});
    clock_ += cfg_.cycles_control_overhead_per_iteration;

    emit({clock_, Unit::Bia, Op::Inv, working, SlotSet::of(latch), Phase::Inversion, -1,
          evaluate_ ? weight(r) : 0});
    clock_ += static_cast<std::uint64_t>(steps) * cfg_.cycles_bia_step;
    cycles.bia_steps = steps;
    cycles.inversion = clock_ - start;

    const std::uint64_t finalize_start = clock_;
    FieldElement x{}, y{};
    if (evaluate_) {
      x = mul_mod(reg(Bank::R0).x, r);
      y = mul_mod(reg(Bank::R0).y, r);
      reg(Bank::Rt).x = x;
      reg(Bank::Rt).y = y;
    }
    emit({clock_, Unit::Bia, Op::Mul, SlotSet::of({Bank::R0, Lane::X}).with(latch),
          SlotSet::of({Bank::Rt, Lane::X}), Phase::Inversion, -1, evaluate_ ? weight(x) : 0});
    clock_ += cfg_.cycles_mul;
    emit({clock_, Unit::Bia, Op::Mul, SlotSet::of({Bank::R0, Lane::Y}).with(latch),
          SlotSet::of({Bank::Rt, Lane::Y}), Phase::Inversion, -1, evaluate_ ? weight(y) : 0});
    clock_ += cfg_.cycles_mul;
    cycles.finalize = clock_ - finalize_start;

    affine = z.is_zero() ? AffinePoint::at_infinity() : AffinePoint{x, y, false};
  }

  const CycleConfig& cfg_;
  Design design_;
  bool evaluate_;
  std::uint64_t pass_;
  std::uint64_t clock_ = 0;
  std::array<ProjectivePoint, 3> banks_{};
  OperationTrace unit_a_;
  OperationTrace unit_b_;
};

}  // namespace

std::string_view to_string(Design design) noexcept {
  return design == Design::Hardened ? "hardened" : "baseline";
}

const std::array<EcpaMicroOp, kEcpaProgramLength>& ecpa_microprogram() { return kProgram; }

ProjectivePoint ecpa_execute(const ProjectivePoint& p, const ProjectivePoint& q) {
  OperandFile f = load_operands(p, q);
  for (const EcpaMicroOp& op : kProgram) step(f, op);
  return {f[idx(V::X3)], f[idx(V::Y3)], f[idx(V::Z3)]};
}

std::uint64_t ecpa_pass_cycles(const CycleConfig& cfg) {
  std::uint64_t total = 0;
  for (const EcpaMicroOp& op : kProgram) total += cfg.cost(op.opcode);
  return total;
}

CycleBreakdown predicted_cycles(const CycleConfig& cfg, Design design, unsigned bit_length,
                                std::uint32_t bia_steps) {
  const std::uint64_t pass = ecpa_pass_cycles(cfg);
  const std::uint64_t overhead = cfg.cycles_control_overhead_per_iteration;
  const std::uint64_t per_iteration =
      (design == Design::Hardened ? 2 * pass : pass) + overhead;

  CycleBreakdown c;
  c.init = 2 * overhead + pass;
  c.ladder_iterations = bit_length > 0 ? bit_length - 1 : 0;
  c.ladder = per_iteration * c.ladder_iterations;
  c.bia_steps = bia_steps;
  c.inversion = overhead + static_cast<std::uint64_t>(bia_steps) * cfg.cycles_bia_step;
  c.finalize = 2 * static_cast<std::uint64_t>(cfg.cycles_mul);
  return c;
}

SimulationResult simulate_scalar_mul(const Scalar256& k, const ProjectivePoint& p,
                                     const CycleConfig& cfg, const SimOptions& options) {
  cfg.validate();
  if (options.frequency_hz == 0) throw Error(Errc::InvalidConfig, "frequency must be positive");
  if (!is_on_curve(p) || p.is_identity()) {
    throw Error(Errc::InvalidInput, "simulation input must be a finite curve point");
  }

  Engine engine(cfg, options.design, true);
  engine.trace.reserve(static_cast<std::size_t>(k.bit_length()) * 100 + 80);
  engine.run(k, p);

  SimulationResult out;
  out.affine = engine.affine;
  out.projective = engine.projective;
  out.cycles = engine.cycles;
  out.report = cycle_report(engine.cycles.total(), options.frequency_hz);
  out.trace = std::move(engine.trace);
  return out;
}

OperationTrace schedule_scalar_mul(const Scalar256& k, const CycleConfig& cfg, Design design) {
  cfg.validate();
  Engine engine(cfg, design, false);
  engine.trace.reserve(static_cast<std::size_t>(k.bit_length()) * 100 + 80);
  engine.run(k, ProjectivePoint::identity());
  return std::move(engine.trace);
}

}  // namespace k1guard
