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

#include "k1guard/cycle_model.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "k1guard/error.hpp"

namespace k1guard {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::uint32_t* field_for(CycleConfig& cfg, std::string_view key) {
  if (key == "cycles_add") return &cfg.cycles_add;
  if (key == "cycles_sub") return &cfg.cycles_sub;
  if (key == "cycles_mul") return &cfg.cycles_mul;
  if (key == "cycles_bia_step") return &cfg.cycles_bia_step;
  if (key == "cycles_control_overhead_per_iteration") {
    return &cfg.cycles_control_overhead_per_iteration;
  }
  return nullptr;
}

}  // namespace

void CycleConfig::validate() const {
  if (cycles_add == 0 || cycles_sub == 0 || cycles_mul == 0 || cycles_bia_step == 0 ||
      cycles_control_overhead_per_iteration == 0) {
    throw Error(Errc::InvalidConfig, "cycle costs must be strictly positive");
  }
  if (cycles_mul < 256) {
    throw Error(Errc::InvalidConfig, "cycles_mul must be at least 256 (one per multiplier bit)");
  }
}

std::uint32_t CycleConfig::cost(MaluOpcode op) const {
  switch (op) {
    case MaluOpcode::Add: return cycles_add;
    case MaluOpcode::Sub: return cycles_sub;
    case MaluOpcode::Mul: return cycles_mul;
    case MaluOpcode::Inv: return cycles_bia_step;
    case MaluOpcode::Shift: return cycles_add;
    case MaluOpcode::Load: return 0;
  }
  return 0;
}

CycleConfig parse_cycle_config(std::string_view text) {
  CycleConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));

    std::uint32_t* field = field_for(cfg, key);
    if (field == nullptr) {
      throw Error(Errc::InvalidConfig, "line " + std::to_string(line_no) +
                                           ": unknown key '" + std::string(key) + "'");
    }
    std::uint32_t parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
      throw Error(Errc::InvalidConfig, "line " + std::to_string(line_no) +
                                           ": bad value for '" + std::string(key) + "'");
    }
    *field = parsed;
  }
  cfg.validate();
  return cfg;
}

CycleConfig load_cycle_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidConfig, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cycle_config(buf.str());
}

std::string format_cycle_config(const CycleConfig& cfg) {
  std::string out;
  out += "cycles_add = " + std::to_string(cfg.cycles_add) + "\n";
  out += "cycles_sub = " + std::to_string(cfg.cycles_sub) + "\n";
  out += "cycles_mul = " + std::to_string(cfg.cycles_mul) + "\n";
  out += "cycles_bia_step = " + std::to_string(cfg.cycles_bia_step) + "\n";
  out += "cycles_control_overhead_per_iteration = " +
         std::to_string(cfg.cycles_control_overhead_per_iteration) + "\n";
  return out;
}

CycleReport cycle_report(std::uint64_t total_cycles, std::uint64_t frequency_hz) {
  if (total_cycles == 0 || frequency_hz == 0) {
    throw Error(Errc::InvalidConfig, "cycle count and frequency must be positive");
  }
  CycleReport r;
  r.total_cycles = total_cycles;
  r.frequency_hz = frequency_hz;
  r.latency_seconds = static_cast<double>(total_cycles) / static_cast<double>(frequency_hz);
  r.throughput_bps =
      static_cast<double>(frequency_hz) / static_cast<double>(total_cycles) * 256.0;
  return r;
}

}  // namespace k1guard
