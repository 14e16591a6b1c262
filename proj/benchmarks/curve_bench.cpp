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

#include <benchmark/benchmark.h>

#include "k1guard/curve.hpp"
#include "k1guard/ladder.hpp"

namespace {

const k1guard::Scalar256 kScalar = k1guard::Scalar256::from_hex(
    "c90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74020bbea63b139b22");

void BM_PointAdd(benchmark::State& state) {
  auto g = k1guard::generator();
  auto q = k1guard::point_double(g);
  for (auto _ : state) {
    q = k1guard::point_add_complete(q, g);
    benchmark::DoNotOptimize(q);
  }
}

void BM_LadderHardened(benchmark::State& state) {
  auto g = k1guard::generator();
  for (auto _ : state) benchmark::DoNotOptimize(k1guard::scalar_mul_hardened(kScalar, g));
}

void BM_LadderBaseline(benchmark::State& state) {
  auto g = k1guard::generator();
  for (auto _ : state) benchmark::DoNotOptimize(k1guard::scalar_mul_baseline(kScalar, g));
}

}  // namespace

BENCHMARK(BM_PointAdd);
BENCHMARK(BM_LadderHardened)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LadderBaseline)->Unit(benchmark::kMillisecond);
