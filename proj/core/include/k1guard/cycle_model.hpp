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
#include <filesystem>
#include <string>
#include <string_view>

#include "k1guard/fp256.hpp"

namespace k1guard {

/// Clock cycles charged per datapath operation.
struct CycleConfig {
  std::uint32_t cycles_add = 2;
  std::uint32_t cycles_sub = 2;
  /// Bit-serial multiply: at least one cycle per shift-and-add step.
  std::uint32_t cycles_mul = 261;
  std::uint32_t cycles_bia_step = 2;
  std::uint32_t cycles_control_overhead_per_iteration = 26;

  /// Shipped calibration, see README "Cycle model".
  static constexpr CycleConfig defaults() { return {}; }

  /// Throws Error(InvalidConfig) if a cost is zero or cycles_mul < 256.
  void validate() const;

  std::uint32_t cost(MaluOpcode op) const;

  friend bool operator==(const CycleConfig&, const CycleConfig&) = default;
};

/// Parses `key = value` lines; `#` starts a comment. Keys not present keep
/// their default. Unknown keys, malformed numbers and values failing
/// validate() throw Error(InvalidConfig).
CycleConfig parse_cycle_config(std::string_view text);
CycleConfig load_cycle_config(const std::filesystem::path& path);
std::string format_cycle_config(const CycleConfig& cfg);

struct CycleReport {
  std::uint64_t total_cycles = 0;
  std::uint64_t frequency_hz = 0;
  double latency_seconds = 0.0;
  /// (frequency / cycles) * 256 output bits.
  double throughput_bps = 0.0;
};

/// Throws Error(InvalidConfig) if either argument is zero.
CycleReport cycle_report(std::uint64_t total_cycles, std::uint64_t frequency_hz);

}  // namespace k1guard
