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

#include <cmath>
#include <random>
#include <sstream>

#include "k1guard/error.hpp"
#include "k1guard/sca.hpp"
#include "oracle.hpp"

namespace k1guard {
namespace {

std::vector<Scalar256> scalars(std::initializer_list<std::uint64_t> values) {
  std::vector<Scalar256> out;
  for (auto v : values) out.push_back(Scalar256::from_u64(v));
  return out;
}

template <typename F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Uniformity, SmallPair) {
  auto ks = scalars({0b10, 0b11});
  UniformityReport r = assert_uniform_shapes(ks, generator());
  EXPECT_TRUE(r);
  EXPECT_FALSE(r.divergent_scalar.has_value());
}

TEST(Uniformity, SingleScalar) {
  auto ks = scalars({0b1});
  EXPECT_TRUE(assert_uniform_shapes(ks, generator()));
}

TEST(Uniformity, RandomFullLength) {
  std::mt19937_64 rng(51);
  std::vector<Scalar256> ks;
  for (int i = 0; i < 4; ++i) ks.push_back(oracle::random_full_scalar(rng));
  EXPECT_TRUE(assert_uniform_shapes(ks, generator()));
}

TEST(Uniformity, Errors) {
  expect_error(Errc::InvalidInput, [] { assert_uniform_shapes({}, generator()); });
  auto mixed = scalars({0b10, 0b100});
  expect_error(Errc::IncomparableTraces, [&] { assert_uniform_shapes(mixed, generator()); });
}

TEST(Contrast, TwoBitScalars) {
  auto ks = scalars({0b10, 0b11});
  DivergenceSummary s = contrast_baseline(ks, generator());
  EXPECT_EQ(s.divergent_bits, std::vector<unsigned>{0});
  EXPECT_EQ(s.divergences_between(0, 1), std::vector<unsigned>{0});
}

TEST(Contrast, ThreeBitScalars) {
  auto ks = scalars({0b110, 0b101});
  DivergenceSummary s = contrast_baseline(ks, generator());
  EXPECT_EQ(s.divergent_bits, (std::vector<unsigned>{1, 0}));
}

TEST(Contrast, IdenticalScalars) {
  auto ks = scalars({0b1011, 0b1011});
  EXPECT_TRUE(contrast_baseline(ks, generator()).divergent_bits.empty());
}

TEST(Contrast, EveryDifferingBitDiverges) {
  std::mt19937_64 rng(52);
  std::uint64_t a = rng() | (1ull << 15), b = rng() | (1ull << 15);
  a &= 0xFFFF;
  b &= 0xFFFF;
  auto ks = scalars({a, b});
  DivergenceSummary s = contrast_baseline(ks, generator());
  std::vector<unsigned> expected;
  for (int j = 14; j >= 0; --j) {
    if (((a ^ b) >> j) & 1) expected.push_back(static_cast<unsigned>(j));
  }
  EXPECT_EQ(s.divergences_between(0, 1), expected);
}

TEST(Contrast, Errors) {
  auto one = scalars({0b10});
  expect_error(Errc::InvalidInput, [&] { contrast_baseline(one, generator()); });
  auto mixed = scalars({0b10, 0b100});
  expect_error(Errc::IncomparableTraces, [&] { contrast_baseline(mixed, generator()); });
}

TEST(PowerTrace, OneSamplePerWrite) {
  OperationTrace trace = schedule_scalar_mul(Scalar256::from_u64(0b1101), CycleConfig::defaults());
  auto writes = std::count_if(trace.begin(), trace.end(),
                              [](const TraceEvent& e) { return !e.writes.empty(); });
  EXPECT_EQ(power_trace(trace, LeakageChannel::OperationSlot).samples.size(),
            static_cast<std::size_t>(writes));
  EXPECT_EQ(power_trace(trace, LeakageChannel::DataValue).samples.size(),
            static_cast<std::size_t>(writes));
}

TEST(PowerTrace, SlotLeakage) {
  TraceEvent e;
  e.unit = Unit::EcpaB;                         // 1
  e.opcode = MaluOpcode::Load;                  // 0b101 -> 2
  e.writes = SlotSet::of({Bank::Rt, Lane::Z});  // address 0b1010 -> 2
  EXPECT_EQ(operation_slot_leakage(e), 5.0);
}

TEST(Welch, KnownStatistic) {
  WelchAccumulator a, b;
  for (double v : {1.0, 2.0, 3.0, 4.0}) a.add(std::vector<double>{v});
  for (double v : {2.0, 4.0, 6.0, 8.0}) b.add(std::vector<double>{v});
  EXPECT_DOUBLE_EQ(a.mean(0), 2.5);
  EXPECT_NEAR(a.variance(0), 5.0 / 3.0, 1e-12);
  // (2.5 - 5) / sqrt(5/12 + 20/12)
  EXPECT_NEAR(welch_t(a, b)[0], -2.5 / std::sqrt(25.0 / 12.0), 1e-12);
}

TEST(Welch, ZeroVariance) {
  WelchAccumulator a, b, c;
  for (int i = 0; i < 3; ++i) {
    a.add(std::vector<double>{1.0});
    b.add(std::vector<double>{1.0});
    c.add(std::vector<double>{2.0});
  }
  EXPECT_EQ(welch_t(a, b)[0], 0.0);
  EXPECT_TRUE(std::isinf(welch_t(a, c)[0]));
}

TEST(Welch, WidthMismatch) {
  WelchAccumulator a;
  a.add(std::vector<double>{1.0, 2.0});
  expect_error(Errc::IncomparableTraces, [&] { a.add(std::vector<double>{1.0}); });
  WelchAccumulator b;
  b.add(std::vector<double>{1.0});
  expect_error(Errc::IncomparableTraces, [&] { welch_t(a, b); });
}

TEST(Welch, SameDistributionRarelyExceedsThreshold) {
  int exceed = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(3.0, 2.0);
    WelchAccumulator a, b;
    std::vector<double> s(50);
    for (int n = 0; n < 200; ++n) {
      for (double& v : s) v = d(rng);
      a.add(s);
      for (double& v : s) v = d(rng);
      b.add(s);
    }
    double max_t = 0.0;
    for (double t : welch_t(a, b)) max_t = std::max(max_t, std::fabs(t));
    if (max_t >= 4.5) ++exceed;
  }
  EXPECT_LE(exceed, 1);
}

TEST(TTest, HardenedSlotChannelPasses) {
  LeakageReport r = welch_ttest(Scalar256::from_u64(0xF0F0F0F0F0F0F0F1ull), 200, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_abs_t, 4.5);
  EXPECT_EQ(r.trials, 200u);
  EXPECT_FALSE(r.t_statistics.empty());
}

TEST(TTest, BaselineSlotChannelFails) {
  TTestOptions opts;
  opts.design = Design::Baseline;
  LeakageReport r = welch_ttest(Scalar256::from_u64(0xF0F0F0F0F0F0F0F1ull), 200, 1.0, opts);
  EXPECT_FALSE(r.pass);
  EXPECT_GE(r.max_abs_t, 4.5);
}

TEST(TTest, FixedVersusSameFixedIsDegenerate) {
  TTestOptions opts;
  opts.second_group_scalar = Scalar256::from_u64(0b1011);
  LeakageReport r = welch_ttest(Scalar256::from_u64(0b1011), 100, 0.0, opts);
  EXPECT_EQ(r.max_abs_t, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(TTest, DataChannelProducesAlignedReport) {
  TTestOptions opts;
  opts.channel = LeakageChannel::DataValue;
  Scalar256 k = Scalar256::from_u64(0b110101);
  LeakageReport r = welch_ttest(k, 100, 1.0, opts);
  EXPECT_EQ(r.t_statistics.size(),
            power_trace(schedule_scalar_mul(k, CycleConfig::defaults()), LeakageChannel::DataValue)
                .samples.size());
}

TEST(TTest, DeterministicUnderSeed) {
  Scalar256 k = Scalar256::from_u64(0xABCDEF);
  TTestOptions opts;
  opts.seed = 99;
  LeakageReport a = welch_ttest(k, 100, 1.0, opts);
  LeakageReport b = welch_ttest(k, 100, 1.0, opts);
  EXPECT_EQ(a.t_statistics, b.t_statistics);
  opts.seed = 100;
  EXPECT_NE(welch_ttest(k, 100, 1.0, opts).t_statistics, a.t_statistics);
}

TEST(TTest, Errors) {
  Scalar256 k = Scalar256::from_u64(5);
  expect_error(Errc::InvalidInput, [&] { welch_ttest(k, 99, 1.0); });
  expect_error(Errc::InvalidInput, [&] { welch_ttest(k, 100, -1.0); });
  TTestOptions opts;
  opts.second_group_scalar = Scalar256::from_u64(0b1111);
  expect_error(Errc::IncomparableTraces, [&] { welch_ttest(k, 100, 1.0, opts); });
}

TEST(TTest, ReportFormats) {
  LeakageReport r;
  r.t_statistics = {1.5, -2.25};
  r.max_abs_t = 2.25;
  r.max_index = 1;
  r.trials = 100;
  std::ostringstream os;
  write_leakage_report(os, r);
  EXPECT_EQ(os.str(),
            "design: hardened\nchannel: operation_slot\ntrials: 100\nsamples: 2\n"
            "max_abs_t: 2.2500\nmax_index: 1\nthreshold: 4.5\nresult: pass\n"
            "t[0]: 1.5000\nt[1]: -2.2500\n");
  EXPECT_EQ(leakage_summary(r),
            "design=hardened channel=operation_slot trials=100 samples=2 max_abs_t=2.2500 "
            "threshold=4.5 pass=1");
}

}  // namespace
}  // namespace k1guard
