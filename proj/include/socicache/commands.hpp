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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socicache/batch.hpp"

namespace socicache {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  // Falls back to $SOCICACHE_OUT, then "results".
  std::optional<std::filesystem::path> out;
  std::vector<std::string> sets;
  std::optional<std::filesystem::path> trace;
  Execution exec = Execution::Parallel;
};

std::filesystem::path output_dir(const CommandOptions& opts);

// Each command writes its files under output_dir(), prints a table to out
// and diagnostics to err, and returns an exit code.
int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare_strategies(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare_caches(const CommandOptions& opts, std::ostream& out, std::ostream& err);
// Writes the generated trace to opts.out (a file path) or to out.
int cmd_gen_trace(const CommandOptions& opts, std::ostream& out, std::ostream& err);

// Comparison tables.
std::string strategies_csv(const std::vector<RunSummary>& runs);
std::string caches_csv(const std::vector<RunSummary>& runs);

}  // namespace socicache
