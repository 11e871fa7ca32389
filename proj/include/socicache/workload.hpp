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
#include <queue>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "socicache/core.hpp"
#include "socicache/peer.hpp"
#include "socicache/random.hpp"
#include "socicache/social_cache.hpp"

namespace socicache {

// Ego-network statistics of the reference social network data set (times in days).
struct DatasetStats {
  double total_egos = 60102;
  double avg_alters = 25.7177;
  double avg_ts_friend_request = 36.7332;
  double avg_ts_interaction = 43.0402;
  double experiment_span = 869.458;

  void validate() const;
};

// Downsampling of a data-set interval x onto a shorter experiment:
// dataset_experiment_time / (new_experiment_time * x). The result is the
// number of events per unit of new experiment time, so an event stream with
// mean gap 1 / sampled_interval keeps the data set's event count over the
// span. Throws Errc::InvalidArgument on non-positive input.
double sampled_interval(double x, double dataset_experiment_time,
                        double new_experiment_time);

struct PostAction {
  StorageKey key;
  std::size_t payload_size = 0;
  friend bool operator==(const PostAction&, const PostAction&) = default;
};
struct LookupAction {
  StorageKey key;
  friend bool operator==(const LookupAction&, const LookupAction&) = default;
};
struct FriendRequestAction {
  UserId target;
  friend bool operator==(const FriendRequestAction&, const FriendRequestAction&) = default;
};

using TraceAction = std::variant<PostAction, LookupAction, FriendRequestAction>;

struct TraceEvent {
  SimTime at = 0;
  UserId actor;
  TraceAction action;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct CurrentCacheConfig {
  Duration ttl = kDefaultCacheTtl;
  std::size_t capacity = kDefaultCacheCapacity;
};

struct WorkloadConfig {
  std::size_t keys_per_user = 20;
  std::size_t payload_size = 256;
  // Per-peer mean gap between content lookups.
  Duration lookup_mean_gap = 2 * kTicksPerSecond;
  // Zipf exponents: preference over friends, and over a friend's keys
  // (profile, newest post, ..., oldest post).
  double friend_skew = 1.5;
  double key_skew = 1.0;
};

struct ScenarioConfig {
  std::size_t peer_count = 64;
  std::size_t friends_per_user = 25;
  Duration sim_duration = 6 * kTicksPerHour;
  // In days; defaults to sim_duration.
  std::optional<double> new_experiment_time;
  // Defaults to 40% and 80% of sim_duration.
  std::optional<std::vector<SimTime>> friend_request_phases;
  StrategyConfig strategy;
  CacheSetup cache_setup = CacheSetup::Both;
  CurrentCacheConfig current_cache;
  std::uint64_t seed = 1;
  bool bootstrapping = true;
  WorkloadConfig workload;
  DatasetStats dataset;
  Duration sample_cadence = 60 * kTicksPerSecond;
  unsigned replication_factor = kDefaultReplicationFactor;
  Duration hop_latency = 0;

  double effective_new_experiment_time() const;
  std::vector<SimTime> effective_phases() const;
  // Mean gap between posts of one user, downsampled from the data set's
  // interaction interval.
  double post_mean_gap() const;

  // Throws Errc::ConfigError naming the offending key.
  void validate() const;
};

// Ordered event stream consumed by the simulation.
class TraceSource {
 public:
  virtual ~TraceSource() = default;
  virtual std::optional<TraceEvent> next() = 0;
};

// Replays a materialised trace; the events must outlive the source.
class VectorTrace final : public TraceSource {
 public:
  explicit VectorTrace(std::span<const TraceEvent> events) : events_(events) {}
  std::optional<TraceEvent> next() override;

 private:
  std::span<const TraceEvent> events_;
  std::size_t pos_ = 0;
};

// Synthetic ego-network workload. Deterministic for a given config.
//
// Each peer gets exactly friends_per_user symmetric friends. Friendships are
// requested in batches: one at t = 0 and one per configured phase. Every
// peer posts its profile at t = 0, then wall posts round-robin over
// keys_per_user keys with exponential gaps. Lookups target existing keys
// of current friends with Zipf preference.
class TraceGenerator final : public TraceSource {
 public:
  explicit TraceGenerator(const ScenarioConfig& cfg);

  std::optional<TraceEvent> next() override;

  const std::vector<UserId>& users() const { return users_; }
  // Final friendship graph (after all phases), by user index.
  const std::vector<std::vector<std::uint32_t>>& friend_graph() const { return graph_; }
  double post_mean_gap() const { return post_gap_; }

 private:
  enum Order : std::uint8_t { kPost = 0, kFriendRequest = 1, kLookup = 2 };

  struct Pending {
    SimTime at;
    std::uint8_t order;
    std::uint32_t user;
    std::uint32_t aux;  // edge index for friend requests, 1 for the profile post
    bool operator>(const Pending& o) const {
      if (at != o.at) return at > o.at;
      if (order != o.order) return order > o.order;
      if (user != o.user) return user > o.user;
      return aux > o.aux;
    }
  };

  struct Friend {
    double affinity;
    std::uint32_t user;
  };

  void build_graph(Rng& rng);
  void schedule(SimTime at, std::uint8_t order, std::uint32_t user, std::uint32_t aux);
  std::size_t zipf_pick(const std::vector<double>& cumulative, std::size_t n, Rng& rng) const;
  StorageKey key_of(std::uint32_t owner, std::size_t recency_rank) const;
  void befriend(std::uint32_t a, std::uint32_t b);

  ScenarioConfig cfg_;
  std::vector<UserId> users_;
  std::vector<std::vector<std::uint32_t>> graph_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::vector<Friend>> current_friends_;
  std::vector<std::uint64_t> wall_posts_;
  std::vector<Rng> post_rng_;
  std::vector<Rng> lookup_rng_;
  Rng affinity_rng_;
  std::vector<double> friend_cdf_;
  std::vector<double> key_cdf_;
  double post_gap_ = 0;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> heap_;
};

// Convenience for small scenarios and tests.
std::vector<TraceEvent> generate_trace(const ScenarioConfig& cfg);

class TraceError : public Error {
 public:
  TraceError(Errc code, std::size_t line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Trace file: one event per line, "t_ticks actor action target_or_key
// [payload_size]" with action in {POST, LOOKUP, FRIENDREQ}. Blank lines and
// lines starting with '#' are skipped.
std::string format_trace_line(const TraceEvent& event);
std::vector<TraceEvent> parse_trace(std::istream& in);
std::vector<TraceEvent> load_trace(const std::filesystem::path& path);
void write_trace(std::ostream& out, TraceSource& source);

}  // namespace socicache
