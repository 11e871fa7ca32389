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
#pragma once

// Independent scenario runs, executed one after another or concurrently
// (one event loop per run, nothing shared but the read-only trace).

#include <span>
#include <string>
#include <vector>

#include "socicache/metrics.hpp"
#include "socicache/workload.hpp"

namespace socicache {

struct RunSpec {
  std::string label;
  ScenarioConfig config;
};

struct RunResult {
  RunSummary summary;
  MetricsLedger ledger;
};

enum class Execution { Serial, Parallel };

// Runs one scenario. With a shared trace the generator is bypassed.
RunResult run_scenario(const ScenarioConfig& cfg, std::string label,
                       const std::vector<TraceEvent>* shared_trace = nullptr);

// Results are in input order for both execution modes. The first failure
// (in input order) is rethrown after all runs have finished.
std::vector<RunResult> run_batch(std::span<const RunSpec> specs, Execution exec,
                                 const std::vector<TraceEvent>* shared_trace = nullptr);

}  // namespace socicache
