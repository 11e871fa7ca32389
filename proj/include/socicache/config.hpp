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

// Scenario configuration files: flat "key = value" lines with dotted keys
// (e.g. strategy.kind, current_cache.ttl_ticks). '#' starts a comment.
// Durations accept plain ticks or a unit suffix: ms, s, min, h, d.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socicache/workload.hpp"

namespace socicache {

Duration parse_duration(std::string_view text);

// Throws Errc::ConfigError naming the key.
void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value);

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

struct ResolvedConfig {
  ScenarioConfig scenario;
  std::set<std::string> explicit_keys;
};

// Defaults, then the file, then --set overrides, then --seed. Validates.
ResolvedConfig resolve_config(const std::optional<std::filesystem::path>& file,
                              std::span<const std::string> overrides,
                              std::optional<std::uint64_t> seed);

// Canonical text of every setting; parseable by parse_config_text.
std::string render_config(const ScenarioConfig& cfg);

// Stable id of (config, seed).
std::string run_id(const ScenarioConfig& cfg);

}  // namespace socicache
