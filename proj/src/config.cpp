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
#include "socicache/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "socicache/digest.hpp"
#include "socicache/metrics.hpp"

namespace socicache {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view why) {
  throw Error(Errc::ConfigError, std::string(key) + ": " + std::string(why) + " '" +
                                     std::string(value) + "'");
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size())
    bad_value(key, value, "expected an integer, got");
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size())
    bad_value(key, value, "expected a number, got");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "enabled") return true;
  if (value == "false" || value == "0" || value == "disabled") return false;
  bad_value(key, value, "expected true/false, got");
}

Duration duration_value(std::string_view key, std::string_view value) {
  try {
    return parse_duration(value);
  } catch (const Error&) {
    bad_value(key, value, "expected a duration, got");
  }
}

template <typename F>
auto enum_value(std::string_view key, std::string_view value, F parse) {
  try {
    return parse(value);
  } catch (const Error&) {
    bad_value(key, value, "unknown value");
  }
}

constexpr std::pair<std::string_view, InteractionKind> kWeightKeys[] = {
    {"strategy.weights.lookup", InteractionKind::Lookup},
    {"strategy.weights.wall_post", InteractionKind::WallPost},
    {"strategy.weights.friend_request", InteractionKind::FriendRequest},
    {"strategy.weights.like", InteractionKind::Like},
    {"strategy.weights.comment", InteractionKind::Comment},
};

}  // namespace

Duration parse_duration(std::string_view text) {
  text = trim(text);
  std::size_t digits = 0;
  while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9') ++digits;
  if (digits == 0) throw Error(Errc::InvalidArgument, "bad duration: " + std::string(text));
  Duration amount = 0;
  std::from_chars(text.data(), text.data() + digits, amount);
  const std::string_view unit = trim(text.substr(digits));
  Duration scale = 1;
  if (unit.empty() || unit == "ms") scale = 1;
  else if (unit == "s") scale = kTicksPerSecond;
  else if (unit == "min") scale = kTicksPerMinute;
  else if (unit == "h") scale = kTicksPerHour;
  else if (unit == "d") scale = kTicksPerDay;
  else throw Error(Errc::InvalidArgument, "bad duration unit: " + std::string(text));
  return amount * scale;
}

void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "peer_count") cfg.peer_count = parse_integer<std::size_t>(key, value);
  else if (key == "friends_per_user") cfg.friends_per_user = parse_integer<std::size_t>(key, value);
  else if (key == "sim_duration") cfg.sim_duration = duration_value(key, value);
  else if (key == "new_experiment_time") {
    if (value == "auto") cfg.new_experiment_time.reset();
    else cfg.new_experiment_time = parse_real(key, value);
  } else if (key == "friend_request_phases") {
    if (value == "auto") {
      cfg.friend_request_phases.reset();
    } else {
      std::vector<SimTime> phases;
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        phases.push_back(duration_value(key, trim(rest.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      cfg.friend_request_phases = std::move(phases);
    }
  } else if (key == "cache_setup") cfg.cache_setup = enum_value(key, value, parse_cache_setup);
  else if (key == "seed") cfg.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "bootstrapping") cfg.bootstrapping = parse_bool(key, value);
  else if (key == "sample_cadence") cfg.sample_cadence = duration_value(key, value);
  else if (key == "replication_factor") cfg.replication_factor = parse_integer<unsigned>(key, value);
  else if (key == "hop_latency") cfg.hop_latency = duration_value(key, value);
  else if (key == "current_cache.ttl_ticks") cfg.current_cache.ttl = duration_value(key, value);
  else if (key == "current_cache.capacity") cfg.current_cache.capacity = parse_integer<std::size_t>(key, value);
  else if (key == "strategy.kind") cfg.strategy.kind = enum_value(key, value, parse_strategy_kind);
  else if (key == "strategy.alpha") cfg.strategy.alpha = parse_real(key, value);
  else if (key == "strategy.beta") cfg.strategy.beta = parse_real(key, value);
  else if (key == "strategy.n") cfg.strategy.n = parse_integer<std::size_t>(key, value);
  else if (key == "strategy.m") cfg.strategy.m = parse_integer<std::size_t>(key, value);
  else if (key == "strategy.update_interval") cfg.strategy.update_interval = duration_value(key, value);
  else if (key == "strategy.trigger") cfg.strategy.trigger = enum_value(key, value, parse_selection_trigger);
  else if (key == "strategy.rng_seed") cfg.strategy.rng_seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "workload.keys_per_user") cfg.workload.keys_per_user = parse_integer<std::size_t>(key, value);
  else if (key == "workload.payload_size") cfg.workload.payload_size = parse_integer<std::size_t>(key, value);
  else if (key == "workload.lookup_mean_gap") cfg.workload.lookup_mean_gap = duration_value(key, value);
  else if (key == "workload.friend_skew") cfg.workload.friend_skew = parse_real(key, value);
  else if (key == "workload.key_skew") cfg.workload.key_skew = parse_real(key, value);
  else if (key == "dataset.total_egos") cfg.dataset.total_egos = parse_real(key, value);
  else if (key == "dataset.avg_alters") cfg.dataset.avg_alters = parse_real(key, value);
  else if (key == "dataset.avg_ts_friend_request") cfg.dataset.avg_ts_friend_request = parse_real(key, value);
  else if (key == "dataset.avg_ts_interaction") cfg.dataset.avg_ts_interaction = parse_real(key, value);
  else if (key == "dataset.experiment_span") cfg.dataset.experiment_span = parse_real(key, value);
  else {
    for (const auto& [name, kind] : kWeightKeys) {
      if (key == name) {
        cfg.strategy.weights[kind] = parse_real(key, value);
        return;
      }
    }
    throw Error(Errc::ConfigError, "unknown config key: " + std::string(key));
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::ConfigError, "config line " + std::to_string(lineno) +
                                         ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty())
      throw Error(Errc::ConfigError, "config line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

ResolvedConfig resolve_config(const std::optional<std::filesystem::path>& file,
                              std::span<const std::string> overrides,
                              std::optional<std::uint64_t> seed) {
  ResolvedConfig r;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw Error(Errc::ConfigError, "cannot read config file: " + file->string());
    std::stringstream buf;
    buf << in.rdbuf();
    for (const auto& [k, v] : parse_config_text(buf.str())) {
      apply_setting(r.scenario, k, v);
      r.explicit_keys.insert(k);
    }
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ConfigError, "--set expects KEY=VALUE, got '" + o + "'");
    const std::string key(trim(std::string_view(o).substr(0, eq)));
    apply_setting(r.scenario, key, std::string_view(o).substr(eq + 1));
    r.explicit_keys.insert(key);
  }
  if (seed) {
    r.scenario.seed = *seed;
    r.explicit_keys.insert("seed");
  }
  r.scenario.validate();
  return r;
}

std::string render_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  auto real = [](double v) { return format_fixed(v, 6); };
  out << "peer_count = " << cfg.peer_count << '\n'
      << "friends_per_user = " << cfg.friends_per_user << '\n'
      << "sim_duration = " << cfg.sim_duration << '\n'
      << "new_experiment_time = "
      << (cfg.new_experiment_time ? real(*cfg.new_experiment_time) : "auto") << '\n';
  out << "friend_request_phases = ";
  if (cfg.friend_request_phases) {
    for (std::size_t i = 0; i < cfg.friend_request_phases->size(); ++i)
      out << (i ? "," : "") << (*cfg.friend_request_phases)[i];
    if (cfg.friend_request_phases->empty()) out << "auto";
  } else {
    out << "auto";
  }
  out << '\n'
      << "cache_setup = " << to_string(cfg.cache_setup) << '\n'
      << "seed = " << cfg.seed << '\n'
      << "bootstrapping = " << (cfg.bootstrapping ? "true" : "false") << '\n'
      << "sample_cadence = " << cfg.sample_cadence << '\n'
      << "replication_factor = " << cfg.replication_factor << '\n'
      << "hop_latency = " << cfg.hop_latency << '\n'
      << "current_cache.ttl_ticks = " << cfg.current_cache.ttl << '\n'
      << "current_cache.capacity = " << cfg.current_cache.capacity << '\n'
      << "strategy.kind = " << to_string(cfg.strategy.kind) << '\n'
      << "strategy.alpha = " << real(cfg.strategy.alpha) << '\n'
      << "strategy.beta = " << real(cfg.strategy.beta) << '\n'
      << "strategy.n = " << cfg.strategy.n << '\n'
      << "strategy.m = " << cfg.strategy.m << '\n'
      << "strategy.update_interval = " << cfg.strategy.update_interval << '\n'
      << "strategy.trigger = " << to_string(cfg.strategy.trigger) << '\n'
      << "strategy.rng_seed = " << cfg.strategy.rng_seed << '\n';
  for (const auto& [name, kind] : kWeightKeys)
    out << name << " = " << real(cfg.strategy.weights[kind]) << '\n';
  out << "workload.keys_per_user = " << cfg.workload.keys_per_user << '\n'
      << "workload.payload_size = " << cfg.workload.payload_size << '\n'
      << "workload.lookup_mean_gap = " << cfg.workload.lookup_mean_gap << '\n'
      << "workload.friend_skew = " << real(cfg.workload.friend_skew) << '\n'
      << "workload.key_skew = " << real(cfg.workload.key_skew) << '\n'
      << "dataset.total_egos = " << real(cfg.dataset.total_egos) << '\n'
      << "dataset.avg_alters = " << real(cfg.dataset.avg_alters) << '\n'
      << "dataset.avg_ts_friend_request = " << real(cfg.dataset.avg_ts_friend_request) << '\n'
      << "dataset.avg_ts_interaction = " << real(cfg.dataset.avg_ts_interaction) << '\n'
      << "dataset.experiment_span = " << real(cfg.dataset.experiment_span) << '\n';
  return out.str();
}

std::string run_id(const ScenarioConfig& cfg) {
  Fnv1a h;
  h.update(render_config(cfg));
  return h.hex();
}

}  // namespace socicache
