/*
 * Copyright (c) 2026 The socicache Authors
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
// Serial versus OpenMP execution of a batch of independent scenarios.

#include <benchmark/benchmark.h>

#include "socicache/batch.hpp"

using namespace socicache;

namespace {

std::vector<RunSpec> cache_variants(Duration duration) {
  std::vector<RunSpec> specs;
  for (auto setup : {CacheSetup::None, CacheSetup::CurrentOnly, CacheSetup::SocialOnly,
                     CacheSetup::Both}) {
    ScenarioConfig c;
    c.sim_duration = duration;
    c.cache_setup = setup;
    specs.push_back({std::string(to_string(setup)), c});
  }
  return specs;
}

void run(benchmark::State& state, Execution exec) {
  const auto specs = cache_variants(state.range(0) * kTicksPerMinute);
  const auto trace = generate_trace(specs.front().config);
  for (auto _ : state) {
    auto results = run_batch(specs, exec, &trace);
    benchmark::DoNotOptimize(results);
  }
  state.counters["events"] = static_cast<double>(trace.size() * specs.size());
  state.counters["events_per_s"] = benchmark::Counter(
      static_cast<double>(trace.size() * specs.size()), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_BatchSerial(benchmark::State& state) { run(state, Execution::Serial); }
void BM_BatchParallel(benchmark::State& state) { run(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(30)->Arg(120)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(30)->Arg(120)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
