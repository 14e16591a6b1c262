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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "k1guard/datapath.hpp"
#include "k1guard/error.hpp"
#include "calibration.hpp"
#include "oracle.hpp"

namespace k1guard {
namespace {

const CycleConfig kDefaults = CycleConfig::defaults();

std::vector<TraceEvent> in_phase(const OperationTrace& trace, Phase phase) {
  std::vector<TraceEvent> out;
  std::copy_if(trace.begin(), trace.end(), std::back_inserter(out),
               [&](const TraceEvent& e) { return e.phase == phase; });
  return out;
}

std::uint64_t ladder_cycles(const OperationTrace& trace) {
  auto ladder = in_phase(trace, Phase::Ladder);
  auto inversion = in_phase(trace, Phase::Inversion);
  return inversion.front().cycle - (ladder.empty() ? 0 : ladder.front().cycle);
}

TEST(Datapath, UnitScalarHasNoLadderIterations) {
  SimulationResult r = simulate_scalar_mul(Scalar256::from_u64(1), generator(), kDefaults);
  EXPECT_EQ(r.affine, generator_affine());
  EXPECT_EQ(r.cycles.ladder_iterations, 0u);
  EXPECT_EQ(r.cycles.ladder, 0u);
  EXPECT_TRUE(in_phase(r.trace, Phase::Ladder).empty());
  auto inversion = in_phase(r.trace, Phase::Inversion);
  EXPECT_EQ(std::count_if(inversion.begin(), inversion.end(),
                          [](const TraceEvent& e) { return e.opcode == MaluOpcode::Inv; }),
            1);
}

TEST(Datapath, MatchesLadderAndOracle) {
  std::mt19937_64 rng(41);
  for (Design design : {Design::Hardened, Design::Baseline}) {
    for (int i = 0; i < 3; ++i) {
      Scalar256 k = oracle::random_full_scalar(rng);
      SimulationResult r = simulate_scalar_mul(k, generator(), kDefaults, {design});
      EXPECT_EQ(r.affine, oracle::to_affine_point(oracle::multiply(oracle::to_mpz(k.bits()),
                                                                   oracle::generator())));
      EXPECT_EQ(r.projective, design == Design::Hardened ? scalar_mul_hardened(k, generator())
                                                         : scalar_mul_baseline(k, generator()));
    }
  }
}

TEST(Datapath, DegenerateResultIsInfinity) {
  Scalar256 n = Scalar256::from_u256(oracle::from_mpz(oracle::group_order()));
  SimulationResult r = simulate_scalar_mul(n, generator(), kDefaults);
  EXPECT_TRUE(r.affine.infinity);
  EXPECT_EQ(r.cycles.bia_steps, 0u);
}

TEST(Datapath, TotalCyclesMatchAcrossScalars) {
  std::mt19937_64 rng(42);
  SimulationResult a = simulate_scalar_mul(oracle::random_full_scalar(rng), generator(), kDefaults);
  SimulationResult b = simulate_scalar_mul(oracle::random_full_scalar(rng), generator(), kDefaults);
  EXPECT_EQ(a.cycles.init, b.cycles.init);
  EXPECT_EQ(a.cycles.ladder, b.cycles.ladder);
  EXPECT_EQ(a.cycles.finalize, b.cycles.finalize);
  EXPECT_EQ(ladder_cycles(a.trace), ladder_cycles(b.trace));
  // Only the value-dependent inversion may move the total.
  EXPECT_EQ(a.cycles.total() - a.cycles.inversion, b.cycles.total() - b.cycles.inversion);
}

TEST(Datapath, AgreesWithClosedForm) {
  std::mt19937_64 rng(43);
  CycleConfig odd{3, 5, 300, 4, 11};
  for (Design design : {Design::Hardened, Design::Baseline}) {
    for (const CycleConfig& cfg : {kDefaults, odd}) {
      for (Scalar256 k : {Scalar256::from_u64(1), Scalar256::from_u64(0b1101),
                          oracle::random_full_scalar(rng)}) {
        SimulationResult r = simulate_scalar_mul(k, generator(), cfg, {design});
        EXPECT_EQ(r.cycles, predicted_cycles(cfg, design, k.bit_length(), r.cycles.bia_steps));
        EXPECT_EQ(r.report.total_cycles, r.cycles.total());
        EXPECT_EQ(r.cycles.bia_steps, binary_inverse(r.projective.z).steps);
      }
    }
  }
}

TEST(Datapath, IterationCostIsSlowerUnitPlusOverhead) {
  CycleConfig cfg = kDefaults;
  auto pass = ecpa_pass_cycles(cfg);
  EXPECT_EQ(pass, 14u * cfg.cycles_mul + 14u * cfg.cycles_add + 5u * cfg.cycles_sub);
  auto t3 = predicted_cycles(cfg, Design::Hardened, 3, 0);
  auto t2 = predicted_cycles(cfg, Design::Hardened, 2, 0);
  EXPECT_EQ(t3.ladder - t2.ladder, std::max(pass, 2 * pass) + cfg.cycles_control_overhead_per_iteration);
}

TEST(Datapath, DefaultCalibrationWithinTenPercent) {
  std::mt19937_64 rng(44);
  SimulationResult r = simulate_scalar_mul(oracle::random_full_scalar(rng), generator(), kDefaults);
  EXPECT_NEAR(static_cast<double>(r.cycles.total()), 1'895'000.0, 189'500.0);
}

TEST(Datapath, ShippedDefaultsEqualCalibrationFit) {
  double steps = calibration::mean_bia_steps(1000, 1);
  calibration::Fit fit = calibration::fit_mul_and_overhead(1'895'000, kDefaults, steps);
  EXPECT_EQ(fit.config, kDefaults);
  EXPECT_NEAR(static_cast<double>(fit.predicted_total), 1'895'000.0, 1'000.0);
}

TEST(Datapath, ReportUsesFrequency) {
  SimOptions opts;
  opts.frequency_hz = 90'000'000;
  SimulationResult r = simulate_scalar_mul(Scalar256::from_u64(5), generator(), kDefaults, opts);
  EXPECT_EQ(r.report.frequency_hz, 90'000'000u);
  EXPECT_DOUBLE_EQ(r.report.latency_seconds, r.cycles.total() / 90e6);
}

TEST(Datapath, HardenedShapesAreUniform) {
  std::mt19937_64 rng(45);
  ShapeDigest ref = trace_shape(simulate_scalar_mul(Scalar256::from_u64(2), generator(), kDefaults).trace);
  EXPECT_EQ(ref, trace_shape(simulate_scalar_mul(Scalar256::from_u64(3), generator(), kDefaults).trace));
  ShapeDigest a = trace_shape(simulate_scalar_mul(oracle::random_full_scalar(rng), generator(), kDefaults).trace);
  ShapeDigest b = trace_shape(simulate_scalar_mul(oracle::random_full_scalar(rng), generator(), kDefaults).trace);
  EXPECT_EQ(a, b);
}

TEST(Datapath, BaselineShapesDiverge) {
  SimOptions baseline{Design::Baseline};
  ShapeDigest two = trace_shape(simulate_scalar_mul(Scalar256::from_u64(2), generator(), kDefaults, baseline).trace);
  ShapeDigest three = trace_shape(simulate_scalar_mul(Scalar256::from_u64(3), generator(), kDefaults, baseline).trace);
  EXPECT_NE(two, three);
  EXPECT_EQ(two.size(), three.size());
}

TEST(Datapath, HardenedCommitsAllBanksOnce) {
  SimulationResult r = simulate_scalar_mul(Scalar256::from_u64(0b1011), generator(), kDefaults);
  auto ladder = in_phase(r.trace, Phase::Ladder);
  int commits = 0;
  for (const TraceEvent& e : ladder) {
    if (e.writes.empty()) continue;
    ++commits;
    EXPECT_EQ(e.unit, Unit::Ctrl);
    EXPECT_EQ(e.writes.bank_enables(), 0b111);
  }
  EXPECT_EQ(commits, 3);
}

// No event reads a bank that an earlier event of the same iteration wrote.
void expect_atomic_iterations(const OperationTrace& trace) {
  std::int16_t bit = -1;
  std::uint8_t written = 0;
  for (const TraceEvent& e : trace) {
    if (e.phase != Phase::Ladder) continue;
    if (e.bit_index != bit) {
      bit = e.bit_index;
      written = 0;
    }
    EXPECT_EQ(e.reads.bank_enables() & written, 0) << format_event(e);
    written |= e.writes.bank_enables();
  }
}

TEST(Datapath, ParallelCommitAtomicity) {
  std::mt19937_64 rng(46);
  Scalar256 k = oracle::random_full_scalar(rng);
  expect_atomic_iterations(simulate_scalar_mul(k, generator(), kDefaults).trace);
  expect_atomic_iterations(simulate_scalar_mul(k, generator(), kDefaults, {Design::Baseline}).trace);
}

TEST(Datapath, CyclesNonDecreasing) {
  auto trace = simulate_scalar_mul(Scalar256::from_u64(0xabcdef), generator(), kDefaults).trace;
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i - 1].cycle, trace[i].cycle);
}

TEST(Datapath, Deterministic) {
  Scalar256 k = Scalar256::from_u64(0x123456789);
  SimulationResult a = simulate_scalar_mul(k, generator(), kDefaults);
  SimulationResult b = simulate_scalar_mul(k, generator(), kDefaults);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.cycles, b.cycles);
  EXPECT_EQ(a.affine, b.affine);
}

TEST(Datapath, ScheduleMatchesSimulation) {
  std::mt19937_64 rng(47);
  Scalar256 k = oracle::random_full_scalar(rng);
  for (Design design : {Design::Hardened, Design::Baseline}) {
    OperationTrace full = simulate_scalar_mul(k, generator(), kDefaults, {design}).trace;
    OperationTrace sched = schedule_scalar_mul(k, kDefaults, design);
    ASSERT_EQ(full.size(), sched.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
      TraceEvent expected = full[i];
      expected.written_weight = 0;
      if (expected.phase == Phase::Inversion) expected.cycle = sched[i].cycle;
      EXPECT_EQ(sched[i], expected) << i;
    }
  }
}

TEST(Datapath, RejectsBadInputs) {
  ProjectivePoint off{FieldElement::from_u64(1), FieldElement::from_u64(1), FieldElement::from_u64(1)};
  Scalar256 k = Scalar256::from_u64(3);
  EXPECT_THROW(simulate_scalar_mul(k, off, kDefaults), Error);
  EXPECT_THROW(simulate_scalar_mul(k, ProjectivePoint::identity(), kDefaults), Error);
  CycleConfig bad = kDefaults;
  bad.cycles_mul = 100;
  EXPECT_THROW(simulate_scalar_mul(k, generator(), bad), Error);
  SimOptions zero_freq;
  zero_freq.frequency_hz = 0;
  EXPECT_THROW(simulate_scalar_mul(k, generator(), kDefaults, zero_freq), Error);
}

}  // namespace
}  // namespace k1guard
