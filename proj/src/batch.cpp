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
#include "socicache/batch.hpp"

#include <exception>
#include <optional>

#include "socicache/config.hpp"
#include "socicache/simulation.hpp"

namespace socicache {

RunResult run_scenario(const ScenarioConfig& cfg, std::string label,
                       const std::vector<TraceEvent>* shared_trace) {
  Simulation sim(cfg);
  if (shared_trace) {
    VectorTrace trace(*shared_trace);
    sim.run(trace);
  } else {
    TraceGenerator trace(cfg);
    sim.run(trace);
  }
  RunResult result{sim.summary(std::move(label)), sim.ledger()};
  result.summary.run_id = run_id(cfg);
  return result;
}

std::vector<RunResult> run_batch(std::span<const RunSpec> specs, Execution exec,
                                 const std::vector<TraceEvent>* shared_trace) {
  const auto count = static_cast<std::ptrdiff_t>(specs.size());
  std::vector<std::optional<RunResult>> slots(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());

  auto one = [&](std::ptrdiff_t i) {
    try {
      slots[i] = run_scenario(specs[i].config, specs[i].label, shared_trace);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) one(i);
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<RunResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace socicache
