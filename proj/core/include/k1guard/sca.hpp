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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "k1guard/cycle_model.hpp"
#include "k1guard/datapath.hpp"
#include "k1guard/trace.hpp"

namespace k1guard {

enum class LeakageChannel : std::uint8_t {
  /// Which unit, which opcode and which register addresses were written.
  OperationSlot,
  /// Hamming weight of the values written.
  DataValue,
};

std::string_view to_string(LeakageChannel channel) noexcept;

/// One sample per write-bearing event of the source trace.
struct PowerTrace {
  std::vector<double> samples;
};

/// HW(unit) + HW(opcode) + sum of HW(address) over the written slots.
double operation_slot_leakage(const TraceEvent& event);

PowerTrace power_trace(const OperationTrace& trace, LeakageChannel channel);

// ---------------------------------------------------------------------------
// Shape uniformity

struct UniformityReport {
  bool uniform = true;
  /// Position in the input list of the first scalar whose shape differs from
  /// the first scalar's, and the event index where it diverges.
  std::optional<std::size_t> divergent_scalar;
  std::optional<std::size_t> first_divergence;
  ShapeDigest reference;

  explicit operator bool() const { return uniform; }
};

/// Simulates every scalar on the hardened datapath and compares trace shapes.
/// Throws Error(IncomparableTraces) if the scalars differ in bit length and
/// Error(InvalidInput) for an empty list.
UniformityReport assert_uniform_shapes(std::span<const Scalar256> scalars,
                                       const ProjectivePoint& p,
                                       const CycleConfig& cfg = CycleConfig::defaults());

// ---------------------------------------------------------------------------
// Baseline contrast

struct BankWrite {
  Unit unit;
  std::uint8_t bank_enables;  // bit 0 = R0, bit 1 = R1, bit 2 = Rt

  friend bool operator==(const BankWrite&, const BankWrite&) = default;
};

struct IterationPattern {
  unsigned bit_index;
  std::vector<BankWrite> writes;  // in trace order

  friend bool operator==(const IterationPattern&, const IterationPattern&) = default;
};

struct DivergenceSummary {
  /// patterns[s][j]: scalar s, j-th ladder iteration (bit t-2 first).
  std::vector<std::vector<IterationPattern>> patterns;
  /// Bit indices, in processing order, where not all scalars wrote alike.
  std::vector<unsigned> divergent_bits;

  /// Bit indices where scalars a and b wrote differently.
  std::vector<unsigned> divergences_between(std::size_t a, std::size_t b) const;
};

std::vector<IterationPattern> write_patterns(const OperationTrace& trace);

/// Runs every scalar through the baseline datapath and lists the iterations
/// whose register-bank write patterns differ.
/// Throws Error(InvalidInput) for fewer than two scalars and
/// Error(IncomparableTraces) for mixed bit lengths.
DivergenceSummary contrast_baseline(std::span<const Scalar256> scalars,
                                    const ProjectivePoint& p,
                                    const CycleConfig& cfg = CycleConfig::defaults());

// ---------------------------------------------------------------------------
// Fixed-vs-random Welch t-test

/// Streaming per-index mean and variance (Welford).
class WelchAccumulator {
 public:
  /// The first call fixes the sample count; later mismatches throw
  /// Error(IncomparableTraces).
  void add(std::span<const double> samples);

  std::size_t count() const { return count_; }
  std::size_t width() const { return mean_.size(); }
  double mean(std::size_t i) const { return mean_[i]; }
  /// Unbiased sample variance; zero with fewer than two observations.
  double variance(std::size_t i) const;

 private:
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

/// Welch's t per sample index. Where both groups have zero variance, t is 0
/// for equal means and +/-infinity otherwise.
std::vector<double> welch_t(const WelchAccumulator& a, const WelchAccumulator& b);

struct LeakageReport {
  std::vector<double> t_statistics;
  double max_abs_t = 0.0;
  std::size_t max_index = 0;
  double threshold = 4.5;
  bool pass = true;
  std::size_t trials = 0;
  LeakageChannel channel = LeakageChannel::OperationSlot;
  Design design = Design::Hardened;
};

struct TTestOptions {
  Design design = Design::Hardened;
  LeakageChannel channel = LeakageChannel::OperationSlot;
  std::uint64_t seed = 1;
  double threshold = 4.5;
  /// Replace the random group by a second fixed scalar (fixed-vs-fixed).
  std::optional<Scalar256> second_group_scalar;
  CycleConfig cycles = CycleConfig::defaults();
};

/// `trials` traces per group: the fixed scalar against fresh random scalars of
/// the same bit length, each sample perturbed by N(0, noise_sigma^2) noise.
/// The OperationSlot channel is read from the controller schedule; the
/// DataValue channel needs full simulations on G.
/// Throws Error(InvalidInput) for trials < 100 or a negative sigma, and
/// Error(IncomparableTraces) if two traces do not align.
LeakageReport welch_ttest(const Scalar256& fixed_k, std::size_t trials, double noise_sigma,
                          const TTestOptions& options = {});

/// `key: value` lines, one t statistic per line after the summary.
void write_leakage_report(std::ostream& os, const LeakageReport& report);
/// Single-line `key=value` summary without the per-sample statistics.
std::string leakage_summary(const LeakageReport& report);

}  // namespace k1guard
