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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socicache/core.hpp"

namespace socicache {

struct Counters {
  std::uint64_t social_hits = 0;
  std::uint64_t current_hits = 0;
  std::uint64_t overlay_replies = 0;
  std::uint64_t unanswered = 0;
  std::uint64_t total_requests = 0;
  std::uint64_t subscriptions_sent = 0;
  std::uint64_t unsubscriptions_sent = 0;
  std::uint64_t bootstrap_dumps = 0;
  std::uint64_t dispatcher_messages = 0;
  std::uint64_t dht_lookups = 0;
  std::uint64_t dht_puts = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t bytes_written = 0;

  std::uint64_t cache_replies() const { return social_hits + current_hits; }
  std::uint64_t answered() const { return cache_replies() + overlay_replies; }

  friend bool operator==(const Counters&, const Counters&) = default;
};

// Cache replies over total replies. Undefined (nullopt) when nothing was
// answered.
std::optional<double> cache_hit_ratio(std::uint64_t cache_replies,
                                      std::uint64_t total_replies);
// Total replies = social + current + overlay; failed lookups are excluded.
std::optional<double> cache_hit_ratio(const Counters& c);

std::optional<double> responses_per_item(std::uint64_t cache_replies,
                                         std::uint64_t items);

class SampledSeries {
 public:
  explicit SampledSeries(std::string name) : name_(std::move(name)) {}

  // Sample times must be strictly increasing; throws Errc::InvalidArgument.
  void sample(SimTime now, double value);

  const std::string& name() const { return name_; }
  const std::vector<std::pair<SimTime, double>>& samples() const { return samples_; }

 private:
  std::string name_;
  std::vector<std::pair<SimTime, double>> samples_;
};

struct MetricsRow {
  SimTime t = 0;
  Counters counters;
  std::uint64_t social_cache_items = 0;
  std::uint64_t current_cache_items = 0;
  double muc_size_mean = 0.0;
  std::size_t max_channels = 0;
  std::size_t max_muc_size = 0;
};

// Fixed-cadence time series of a run.
class MetricsLedger {
 public:
  static constexpr std::string_view kCsvHeader =
      "t_ticks,social_hits,current_hits,overlay_replies,total_requests,"
      "hit_ratio,social_cache_items,current_cache_items,muc_size_mean,"
      "subscriptions_sent,unsubscriptions_sent,bootstrap_dumps,"
      "dispatcher_messages,dht_lookups,dht_puts,bytes_read,bytes_written";

  void append(MetricsRow row);

  const std::vector<MetricsRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  // Extracts one numeric CSV column as a series, e.g. "social_cache_items".
  SampledSeries series(std::string_view column) const;

  std::string to_csv() const;

 private:
  std::vector<MetricsRow> rows_;
};

// Throws Errc::IoError when the file cannot be written.
void export_csv(const MetricsLedger& ledger, const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Fixed-precision decimal rendering; identical across runs and platforms.
std::string format_fixed(double value, int precision = 6);
std::string format_optional(const std::optional<double>& value, int precision = 6);

struct RunSummary {
  std::string run_id;
  std::string label;
  std::string strategy;
  std::string cache_setup;
  std::uint64_t seed = 0;
  std::string trace_hash;
  Counters counters;
  std::uint64_t social_cache_items = 0;
  std::uint64_t current_cache_items = 0;
  std::size_t max_channels = 0;
  std::size_t max_muc_size = 0;

  std::optional<double> hit_ratio() const { return cache_hit_ratio(counters); }
  std::optional<double> per_item() const {
    return responses_per_item(counters.cache_replies(),
                              social_cache_items + current_cache_items);
  }
};

std::string summary_csv(const std::vector<RunSummary>& runs);

}  // namespace socicache
