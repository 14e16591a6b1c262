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

#include "k1guard/sca.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "k1guard/error.hpp"
#include "k1guard/text.hpp"

namespace k1guard {
namespace {

void require_equal_lengths(std::span<const Scalar256> scalars) {
  for (const Scalar256& k : scalars) {
    if (k.bit_length() != scalars.front().bit_length()) {
      throw Error(Errc::IncomparableTraces, "scalars differ in bit length");
    }
  }
}

Scalar256 random_scalar(std::mt19937_64& rng, unsigned bit_length) {
  U256 bits;
  for (auto& limb : bits.limb) limb = rng();
  for (unsigned i = bit_length; i < 256; ++i) bits.limb[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  bits.set_bit(bit_length - 1);
  return Scalar256::from_u256(bits);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial, unsigned stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

}  // namespace

std::string_view to_string(LeakageChannel channel) noexcept {
  return channel == LeakageChannel::OperationSlot ? "operation_slot" : "data_value";
}

double operation_slot_leakage(const TraceEvent& event) {
  unsigned hw = std::popcount(static_cast<unsigned>(event.unit)) +
                std::popcount(static_cast<unsigned>(event.opcode));
  for (RegisterSlot s : event.writes.slots()) hw += std::popcount(s.address());
  return static_cast<double>(hw);
}

PowerTrace power_trace(const OperationTrace& trace, LeakageChannel channel) {
  PowerTrace out;
  for (const TraceEvent& e : trace) {
    if (e.writes.empty()) continue;
    out.samples.push_back(channel == LeakageChannel::OperationSlot
                              ? operation_slot_leakage(e)
                              : static_cast<double>(e.written_weight));
  }
  return out;
}

UniformityReport assert_uniform_shapes(std::span<const Scalar256> scalars,
                                       const ProjectivePoint& p, const CycleConfig& cfg) {
  if (scalars.empty()) throw Error(Errc::InvalidInput, "no scalars to compare");
  require_equal_lengths(scalars);

  UniformityReport report;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    ShapeDigest shape = trace_shape(simulate_scalar_mul(scalars[i], p, cfg).trace);
    if (i == 0) {
      report.reference = std::move(shape);
      continue;
    }
    std::size_t diff = report.reference.first_difference(shape);
    if (diff != ShapeDigest::npos) {
      report.uniform = false;
      report.divergent_scalar = i;
      report.first_divergence = diff;
      break;
    }
  }
  return report;
}

std::vector<IterationPattern> write_patterns(const OperationTrace& trace) {
  std::vector<IterationPattern> out;
  for (const TraceEvent& e : trace) {
    if (e.phase != Phase::Ladder) continue;
    auto bit = static_cast<unsigned>(e.bit_index);
    if (out.empty() || out.back().bit_index != bit) out.push_back({bit, {}});
    if (!e.writes.empty()) out.back().writes.push_back({e.unit, e.writes.bank_enables()});
  }
  return out;
}

std::vector<unsigned> DivergenceSummary::divergences_between(std::size_t a,
                                                             std::size_t b) const {
  std::vector<unsigned> out;
  const auto& pa = patterns.at(a);
  const auto& pb = patterns.at(b);
  for (std::size_t j = 0; j < std::min(pa.size(), pb.size()); ++j) {
    if (pa[j] != pb[j]) out.push_back(pa[j].bit_index);
  }
  return out;
}

DivergenceSummary contrast_baseline(std::span<const Scalar256> scalars,
                                    const ProjectivePoint& p, const CycleConfig& cfg) {
  if (scalars.size() < 2) throw Error(Errc::InvalidInput, "contrast needs at least two scalars");
  require_equal_lengths(scalars);

  SimOptions options;
  options.design = Design::Baseline;

  DivergenceSummary summary;
  for (const Scalar256& k : scalars) {
    summary.patterns.push_back(write_patterns(simulate_scalar_mul(k, p, cfg, options).trace));
  }
  const auto& first = summary.patterns.front();
  for (std::size_t j = 0; j < first.size(); ++j) {
    bool diverges = std::any_of(summary.patterns.begin() + 1, summary.patterns.end(),
                                [&](const auto& other) { return other[j] != first[j]; });
    if (diverges) summary.divergent_bits.push_back(first[j].bit_index);
  }
  return summary;
}

void WelchAccumulator::add(std::span<const double> samples) {
  if (count_ == 0) {
    mean_.assign(samples.size(), 0.0);
    m2_.assign(samples.size(), 0.0);
  } else if (samples.size() != mean_.size()) {
    throw Error(Errc::IncomparableTraces,
                "trace has " + std::to_string(samples.size()) + " samples, expected " +
                    std::to_string(mean_.size()));
  }
  ++count_;
  const double n = static_cast<double>(count_);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double delta = samples[i] - mean_[i];
    mean_[i] += delta / n;
    m2_[i] += delta * (samples[i] - mean_[i]);
  }
}

double WelchAccumulator::variance(std::size_t i) const {
  return count_ < 2 ? 0.0 : m2_[i] / static_cast<double>(count_ - 1);
}

std::vector<double> welch_t(const WelchAccumulator& a, const WelchAccumulator& b) {
  if (a.width() != b.width()) {
    throw Error(Errc::IncomparableTraces, "groups have different sample counts");
  }
  std::vector<double> t(a.width());
  const double na = static_cast<double>(a.count());
  const double nb = static_cast<double>(b.count());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double diff = a.mean(i) - b.mean(i);
    double se2 = a.variance(i) / na + b.variance(i) / nb;
    if (se2 > 0.0) {
      t[i] = diff / std::sqrt(se2);
    } else if (diff == 0.0) {
      t[i] = 0.0;
    } else {
      t[i] = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
  }
  return t;
}

LeakageReport welch_ttest(const Scalar256& fixed_k, std::size_t trials, double noise_sigma,
                          const TTestOptions& options) {
  if (trials < 100) throw Error(Errc::InvalidInput, "t-test needs at least 100 trials");
  if (!(noise_sigma >= 0.0)) throw Error(Errc::InvalidInput, "noise sigma must be >= 0");
  if (options.second_group_scalar &&
      options.second_group_scalar->bit_length() != fixed_k.bit_length()) {
    throw Error(Errc::IncomparableTraces, "second group scalar differs in bit length");
  }
  options.cycles.validate();

  const ProjectivePoint g = generator();
  auto samples_for = [&](const Scalar256& k) {
    OperationTrace trace;
    if (options.channel == LeakageChannel::OperationSlot) {
      trace = schedule_scalar_mul(k, options.cycles, options.design);
    } else {
      SimOptions sim;
      sim.design = options.design;
      trace = simulate_scalar_mul(k, g, options.cycles, sim).trace;
    }
    return power_trace(trace, options.channel).samples;
  };

  const std::vector<double> fixed_samples = samples_for(fixed_k);
  std::vector<double> second_fixed;
  if (options.second_group_scalar) second_fixed = samples_for(*options.second_group_scalar);

  WelchAccumulator fixed_group;
  WelchAccumulator random_group;
  std::vector<double> noisy;
  auto add_noisy = [&](WelchAccumulator& group, const std::vector<double>& clean,
                       std::mt19937_64& rng) {
    noisy = clean;
    if (noise_sigma > 0.0) {
      std::normal_distribution<double> noise(0.0, noise_sigma);
      for (double& s : noisy) s += noise(rng);
    }
    group.add(noisy);
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 fixed_rng = trial_rng(options.seed, trial, 0);
    std::mt19937_64 random_rng = trial_rng(options.seed, trial, 1);

    add_noisy(fixed_group, fixed_samples, fixed_rng);
    if (options.second_group_scalar) {
      add_noisy(random_group, second_fixed, random_rng);
    } else {
      Scalar256 k = random_scalar(random_rng, fixed_k.bit_length());
      add_noisy(random_group, samples_for(k), random_rng);
    }
  }

  LeakageReport report;
  report.t_statistics = welch_t(fixed_group, random_group);
  report.threshold = options.threshold;
  report.trials = trials;
  report.channel = options.channel;
  report.design = options.design;
  for (std::size_t i = 0; i < report.t_statistics.size(); ++i) {
    double a = std::fabs(report.t_statistics[i]);
    if (a > report.max_abs_t) {
      report.max_abs_t = a;
      report.max_index = i;
    }
  }
  report.pass = report.max_abs_t < report.threshold;
  return report;
}

void write_leakage_report(std::ostream& os, const LeakageReport& report) {
  os << "design: " << to_string(report.design) << '\n'
     << "channel: " << to_string(report.channel) << '\n'
     << "trials: " << report.trials << '\n'
     << "samples: " << report.t_statistics.size() << '\n'
     << "max_abs_t: " << format_fixed(report.max_abs_t, 4) << '\n'
     << "max_index: " << report.max_index << '\n'
     << "threshold: " << format_shortest(report.threshold) << '\n'
     << "result: " << (report.pass ? "pass" : "fail") << '\n';
  for (std::size_t i = 0; i < report.t_statistics.size(); ++i) {
    os << "t[" << i << "]: " << format_fixed(report.t_statistics[i], 4) << '\n';
  }
}

std::string leakage_summary(const LeakageReport& report) {
  std::string out;
  out += "design=" + std::string(to_string(report.design));
  out += " channel=" + std::string(to_string(report.channel));
  out += " trials=" + std::to_string(report.trials);
  out += " samples=" + std::to_string(report.t_statistics.size());
  out += " max_abs_t=" + format_fixed(report.max_abs_t, 4);
  out += " threshold=" + format_shortest(report.threshold);
  out += " pass=" + std::string(report.pass ? "1" : "0");
  return out;
}

}  // namespace k1guard
