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
#include "socicache/metrics.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace socicache {

std::optional<double> cache_hit_ratio(std::uint64_t cache_replies,
                                      std::uint64_t total_replies) {
  if (total_replies == 0) return std::nullopt;
  return static_cast<double>(cache_replies) / static_cast<double>(total_replies);
}

std::optional<double> cache_hit_ratio(const Counters& c) {
  return cache_hit_ratio(c.cache_replies(), c.answered());
}

std::optional<double> responses_per_item(std::uint64_t cache_replies,
                                         std::uint64_t items) {
  if (items == 0) return std::nullopt;
  return static_cast<double>(cache_replies) / static_cast<double>(items);
}

void SampledSeries::sample(SimTime now, double value) {
  if (!samples_.empty() && now <= samples_.back().first)
    throw Error(Errc::InvalidArgument,
                "series " + name_ + ": sample time " + std::to_string(now) +
                    " not after " + std::to_string(samples_.back().first));
  samples_.emplace_back(now, value);
}

void MetricsLedger::append(MetricsRow row) {
  if (!rows_.empty() && row.t <= rows_.back().t)
    throw Error(Errc::InvalidArgument, "metrics rows must have increasing times");
  rows_.push_back(std::move(row));
}

namespace {

double column_value(const MetricsRow& r, std::string_view column) {
  const Counters& c = r.counters;
  if (column == "social_hits") return double(c.social_hits);
  if (column == "current_hits") return double(c.current_hits);
  if (column == "overlay_replies") return double(c.overlay_replies);
  if (column == "total_requests") return double(c.total_requests);
  if (column == "hit_ratio") return cache_hit_ratio(c).value_or(0.0);
  if (column == "social_cache_items") return double(r.social_cache_items);
  if (column == "current_cache_items") return double(r.current_cache_items);
  if (column == "muc_size_mean") return r.muc_size_mean;
  if (column == "subscriptions_sent") return double(c.subscriptions_sent);
  if (column == "unsubscriptions_sent") return double(c.unsubscriptions_sent);
  if (column == "bootstrap_dumps") return double(c.bootstrap_dumps);
  if (column == "dispatcher_messages") return double(c.dispatcher_messages);
  if (column == "dht_lookups") return double(c.dht_lookups);
  if (column == "dht_puts") return double(c.dht_puts);
  if (column == "bytes_read") return double(c.bytes_read);
  if (column == "bytes_written") return double(c.bytes_written);
  throw Error(Errc::InvalidArgument, "unknown metrics column: " + std::string(column));
}

}  // namespace

SampledSeries MetricsLedger::series(std::string_view column) const {
  SampledSeries out{std::string(column)};
  for (const auto& r : rows_) out.sample(r.t, column_value(r, column));
  return out;
}

std::string format_fixed(double value, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed,
                           precision);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& value, int precision) {
  return value ? format_fixed(*value, precision) : std::string();
}

std::string MetricsLedger::to_csv() const {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows_) {
    const Counters& c = r.counters;
    out << r.t << ',' << c.social_hits << ',' << c.current_hits << ','
        << c.overlay_replies << ',' << c.total_requests << ','
        << format_optional(cache_hit_ratio(c)) << ',' << r.social_cache_items
        << ',' << r.current_cache_items << ',' << format_fixed(r.muc_size_mean, 4)
        << ',' << c.subscriptions_sent << ',' << c.unsubscriptions_sent << ','
        << c.bootstrap_dumps << ',' << c.dispatcher_messages << ','
        << c.dht_lookups << ',' << c.dht_puts << ',' << c.bytes_read << ','
        << c.bytes_written << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open for writing: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

void export_csv(const MetricsLedger& ledger, const std::filesystem::path& path) {
  write_text_file(path, ledger.to_csv());
}

std::string summary_csv(const std::vector<RunSummary>& runs) {
  std::ostringstream out;
  out << "run_id,label,strategy,cache_setup,seed,trace_hash,social_hits,"
         "current_hits,overlay_replies,unanswered,total_requests,"
         "subscriptions_sent,unsubscriptions_sent,bootstrap_dumps,"
         "dispatcher_messages,dht_lookups,dht_puts,bytes_read,bytes_written,"
         "social_cache_items,current_cache_items,max_channels,max_muc_size,"
         "cache_hit_ratio,responses_per_item\n";
  for (const auto& r : runs) {
    const Counters& c = r.counters;
    out << r.run_id << ',' << r.label << ',' << r.strategy << ','
        << r.cache_setup << ',' << r.seed << ',' << r.trace_hash << ','
        << c.social_hits << ',' << c.current_hits << ',' << c.overlay_replies
        << ',' << c.unanswered << ',' << c.total_requests << ','
        << c.subscriptions_sent << ',' << c.unsubscriptions_sent << ','
        << c.bootstrap_dumps << ',' << c.dispatcher_messages << ','
        << c.dht_lookups << ',' << c.dht_puts << ',' << c.bytes_read << ','
        << c.bytes_written << ',' << r.social_cache_items << ','
        << r.current_cache_items << ',' << r.max_channels << ','
        << r.max_muc_size << ',' << format_optional(r.hit_ratio()) << ','
        << format_optional(r.per_item(), 4) << '\n';
  }
  return out.str();
}

}  // namespace socicache
