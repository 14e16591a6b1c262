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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "k1guard/curve.hpp"

namespace k1guard::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct SelftestOptions {
  /// Generator used for the vector checks; the built-in G when empty.
  std::optional<AffinePoint> generator;
};

/// Runs the reference latency/throughput arithmetic checks and the known-answer
/// vectors. Returns kExitOk iff every check passes.
int run_selftest(std::ostream& out, const SelftestOptions& options = {});

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Results go to `out` as `key: value` lines, diagnostics to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k1guard::cli
