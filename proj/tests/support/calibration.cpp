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

#include "calibration.hpp"

#include <cmath>
#include <random>

#include "k1guard/datapath.hpp"
#include "oracle.hpp"

namespace k1guard::calibration {

double mean_bia_steps(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  std::size_t n = 0;
  while (n < samples) {
    FieldElement z = oracle::random_field(rng);
    if (z.is_zero()) continue;
    sum += binary_inverse(z).steps;
    ++n;
  }
  return sum / static_cast<double>(samples);
}

Fit fit_mul_and_overhead(std::uint64_t target_cycles, const CycleConfig& base,
                         double bia_steps) {
  auto steps = static_cast<std::uint32_t>(std::lround(bia_steps));
  auto total = [&](std::uint32_t mul, std::uint32_t overhead) {
    CycleConfig c = base;
    c.cycles_mul = mul;
    c.cycles_control_overhead_per_iteration = overhead;
    return static_cast<std::int64_t>(
        predicted_cycles(c, Design::Hardened, 256, steps).total());
  };

  // total(mul, o) is affine in both arguments.
  const std::int64_t c0 = total(256, 1);
  const std::int64_t per_mul = total(257, 1) - c0;
  const std::int64_t per_overhead = total(256, 2) - c0;
  const auto target = static_cast<std::int64_t>(target_cycles);

  std::int64_t mul = 256 + (target - c0) / per_mul;
  if (mul < 256) mul = 256;
  std::int64_t rest = target - total(static_cast<std::uint32_t>(mul), 1);
  std::int64_t overhead = 1 + (rest + per_overhead / 2) / per_overhead;
  if (overhead < 1) overhead = 1;

  Fit fit;
  fit.config = base;
  fit.config.cycles_mul = static_cast<std::uint32_t>(mul);
  fit.config.cycles_control_overhead_per_iteration = static_cast<std::uint32_t>(overhead);
  fit.mean_bia_steps = bia_steps;
  fit.predicted_total = static_cast<std::uint64_t>(
      total(fit.config.cycles_mul, fit.config.cycles_control_overhead_per_iteration));
  return fit;
}

}  // namespace k1guard::calibration
