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
#include "socicache/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace socicache {

void DatasetStats::validate() const {
  for (double v : {total_egos, avg_alters, avg_ts_friend_request, avg_ts_interaction,
                   experiment_span}) {
    if (!(v > 0)) throw Error(Errc::ConfigError, "dataset statistics must be positive");
  }
}

double sampled_interval(double x, double dataset_experiment_time,
                        double new_experiment_time) {
  if (!(x > 0) || !(dataset_experiment_time > 0) || !(new_experiment_time > 0))
    throw Error(Errc::InvalidArgument, "sampled_interval arguments must be positive");
  return dataset_experiment_time / (new_experiment_time * x);
}

double ScenarioConfig::effective_new_experiment_time() const {
  if (new_experiment_time) return *new_experiment_time;
  return static_cast<double>(sim_duration) / static_cast<double>(kTicksPerDay);
}

std::vector<SimTime> ScenarioConfig::effective_phases() const {
  if (friend_request_phases) return *friend_request_phases;
  return {sim_duration * 2 / 5, sim_duration * 4 / 5};
}

double ScenarioConfig::post_mean_gap() const {
  const double new_time = effective_new_experiment_time();
  const double rate = sampled_interval(dataset.avg_ts_interaction,
                                       dataset.experiment_span, new_time);
  // rate * new_time events per user over the whole run.
  return static_cast<double>(sim_duration) / (rate * new_time);
}

namespace {
[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(Errc::ConfigError, key + ": " + why);
}
}  // namespace

void ScenarioConfig::validate() const {
  if (peer_count < 2) bad("peer_count", "must be at least 2");
  if (friends_per_user == 0) bad("friends_per_user", "must be positive");
  if (friends_per_user >= peer_count) bad("friends_per_user", "must be below peer_count");
  if (friends_per_user % 2 == 1 && peer_count % 2 == 1)
    bad("friends_per_user", "odd degree needs an even peer_count");
  if (sim_duration <= 0) bad("sim_duration", "must be positive");
  if (new_experiment_time && !(*new_experiment_time > 0))
    bad("new_experiment_time", "must be positive");
  SimTime prev = 0;
  for (SimTime p : effective_phases()) {
    if (p <= 0 || p >= sim_duration) bad("friend_request_phases", "must lie inside the run");
    if (p < prev) bad("friend_request_phases", "must be ascending");
    prev = p;
  }
  try {
    strategy.validate();
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, std::string("strategy: ") + e.what());
  }
  if (current_cache.ttl <= 0) bad("current_cache.ttl_ticks", "must be positive");
  if (current_cache.capacity == 0) bad("current_cache.capacity", "must be positive");
  if (workload.keys_per_user == 0) bad("workload.keys_per_user", "must be positive");
  if (workload.lookup_mean_gap <= 0) bad("workload.lookup_mean_gap", "must be positive");
  if (workload.friend_skew < 0) bad("workload.friend_skew", "must be non-negative");
  if (workload.key_skew < 0) bad("workload.key_skew", "must be non-negative");
  try {
    dataset.validate();
  } catch (const Error& e) {
    bad("dataset", e.what());
  }
  if (sample_cadence <= 0) bad("sample_cadence", "must be positive");
  if (replication_factor == 0) bad("replication_factor", "must be positive");
  if (hop_latency < 0) bad("hop_latency", "must be non-negative");
}

std::optional<TraceEvent> VectorTrace::next() {
  if (pos_ >= events_.size()) return std::nullopt;
  return events_[pos_++];
}

namespace {

std::vector<double> zipf_cdf(std::size_t n, double skew) {
  std::vector<double> cdf(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += 1.0 / std::pow(static_cast<double>(i + 1), skew);
    cdf[i] = sum;
  }
  return cdf;
}

std::string user_name(std::size_t index, std::size_t count) {
  std::size_t width = 2;
  for (std::size_t c = count - 1; c >= 100; c /= 10) ++width;
  std::string digits = std::to_string(index);
  return "u" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

constexpr std::uint64_t kGraphStream = 0;
constexpr std::uint64_t kAffinityStream = 1;
constexpr std::uint64_t kPostStreamBase = 1'000;
constexpr std::uint64_t kLookupStreamBase = 1'000'000;

}  // namespace

TraceGenerator::TraceGenerator(const ScenarioConfig& cfg)
    : cfg_(cfg), affinity_rng_(mix_seed(cfg.seed, kAffinityStream)) {
  cfg_.validate();
  const std::size_t n = cfg_.peer_count;
  users_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) users_.emplace_back(user_name(i, n));

  graph_.assign(n, {});
  current_friends_.assign(n, {});
  wall_posts_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    post_rng_.emplace_back(mix_seed(cfg_.seed, kPostStreamBase + i));
    lookup_rng_.emplace_back(mix_seed(cfg_.seed, kLookupStreamBase + i));
  }
  friend_cdf_ = zipf_cdf(cfg_.friends_per_user, cfg_.workload.friend_skew);
  key_cdf_ = zipf_cdf(cfg_.workload.keys_per_user + 1, cfg_.workload.key_skew);
  post_gap_ = cfg_.post_mean_gap();

  Rng graph_rng(mix_seed(cfg_.seed, kGraphStream));
  build_graph(graph_rng);

  const std::vector<SimTime> phases = cfg_.effective_phases();
  for (std::uint32_t e = 0; e < edges_.size(); ++e) {
    const std::size_t batch = graph_rng.uniform_index(phases.size() + 1);
    schedule(batch == 0 ? 0 : phases[batch - 1], kFriendRequest, edges_[e].first, e);
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    schedule(0, kPost, u, 1);
    schedule(std::llround(post_rng_[u].exponential(post_gap_)), kPost, u, 0);
    schedule(std::llround(lookup_rng_[u].exponential(
                 static_cast<double>(cfg_.workload.lookup_mean_gap))),
             kLookup, u, 0);
  }
}

void TraceGenerator::build_graph(Rng& rng) {
  const std::size_t n = cfg_.peer_count;
  const std::size_t k = cfg_.friends_per_user;
  std::vector<std::uint32_t> ring(n);
  std::iota(ring.begin(), ring.end(), 0u);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(ring[i], ring[rng.uniform_index(i + 1)]);

  // Circulant graph over a random ring: every node links to its k/2
  // nearest ring neighbours on each side, plus the opposite node if k is odd.
  auto link = [&](std::uint32_t a, std::uint32_t b) {
    if (rng.uniform_index(2) == 1) std::swap(a, b);
    edges_.emplace_back(a, b);
    graph_[a].push_back(b);
    graph_[b].push_back(a);
  };
  for (std::size_t d = 1; d <= k / 2; ++d)
    for (std::size_t i = 0; i < n; ++i) link(ring[i], ring[(i + d) % n]);
  if (k % 2 == 1)
    for (std::size_t i = 0; i < n / 2; ++i) link(ring[i], ring[i + n / 2]);
  for (auto& adj : graph_) std::sort(adj.begin(), adj.end());
}

void TraceGenerator::schedule(SimTime at, std::uint8_t order, std::uint32_t user,
                              std::uint32_t aux) {
  if (at >= cfg_.sim_duration) return;
  heap_.push(Pending{at, order, user, aux});
}

std::size_t TraceGenerator::zipf_pick(const std::vector<double>& cumulative,
                                      std::size_t n, Rng& rng) const {
  const double target = rng.uniform01() * cumulative[n - 1];
  auto it = std::upper_bound(cumulative.begin(), cumulative.begin() + static_cast<std::ptrdiff_t>(n), target);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), n - 1);
}

StorageKey TraceGenerator::key_of(std::uint32_t owner, std::size_t recency_rank) const {
  if (recency_rank == 0) return StorageKey{users_[owner], "profile"};
  const std::uint64_t k = cfg_.workload.keys_per_user;
  const std::uint64_t slot = (wall_posts_[owner] - recency_rank) % k;
  return StorageKey{users_[owner], "wall/" + std::to_string(slot)};
}

void TraceGenerator::befriend(std::uint32_t a, std::uint32_t b) {
  auto insert = [this](std::uint32_t self, std::uint32_t other) {
    Friend f{affinity_rng_.uniform01(), other};
    auto& list = current_friends_[self];
    auto pos = std::upper_bound(list.begin(), list.end(), f, [](const Friend& x, const Friend& y) {
      return x.affinity < y.affinity;
    });
    list.insert(pos, f);
  };
  insert(a, b);
  insert(b, a);
}

std::optional<TraceEvent> TraceGenerator::next() {
  while (!heap_.empty()) {
    const Pending p = heap_.top();
    heap_.pop();
    switch (p.order) {
      case kPost: {
        if (p.aux == 1) {
          return TraceEvent{p.at, users_[p.user],
                            PostAction{StorageKey{users_[p.user], "profile"},
                                       cfg_.workload.payload_size}};
        }
        const std::uint64_t slot = wall_posts_[p.user]++ % cfg_.workload.keys_per_user;
        schedule(p.at + std::llround(post_rng_[p.user].exponential(post_gap_)), kPost, p.user, 0);
        return TraceEvent{p.at, users_[p.user],
                          PostAction{StorageKey{users_[p.user], "wall/" + std::to_string(slot)},
                                     cfg_.workload.payload_size}};
      }
      case kFriendRequest: {
        const auto [a, b] = edges_[p.aux];
        befriend(a, b);
        return TraceEvent{p.at, users_[a], FriendRequestAction{users_[b]}};
      }
      case kLookup: {
        Rng& rng = lookup_rng_[p.user];
        schedule(p.at + std::llround(rng.exponential(
                            static_cast<double>(cfg_.workload.lookup_mean_gap))),
                 kLookup, p.user, 0);
        const auto& friends = current_friends_[p.user];
        if (friends.empty()) continue;
        const std::uint32_t target = friends[zipf_pick(friend_cdf_, friends.size(), rng)].user;
        const std::size_t available =
            1 + std::min<std::uint64_t>(wall_posts_[target], cfg_.workload.keys_per_user);
        const std::size_t rank = zipf_pick(key_cdf_, available, rng);
        return TraceEvent{p.at, users_[p.user], LookupAction{key_of(target, rank)}};
      }
      default:
        break;
    }
  }
  return std::nullopt;
}

std::vector<TraceEvent> generate_trace(const ScenarioConfig& cfg) {
  TraceGenerator gen(cfg);
  std::vector<TraceEvent> out;
  while (auto e = gen.next()) out.push_back(std::move(*e));
  return out;
}

std::string format_trace_line(const TraceEvent& event) {
  std::string line = std::to_string(event.at) + ' ' + event.actor.str() + ' ';
  std::visit(
      [&](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, PostAction>) {
          line += "POST " + a.key.str() + ' ' + std::to_string(a.payload_size);
        } else if constexpr (std::is_same_v<A, LookupAction>) {
          line += "LOOKUP " + a.key.str();
        } else {
          line += "FRIENDREQ " + a.target.str();
        }
      },
      event.action);
  return line;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

std::vector<TraceEvent> parse_trace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    auto fail = [&](const std::string& why) -> TraceError {
      return TraceError(Errc::TraceFormatError, lineno, why);
    };
    if (tok.size() < 4) throw fail("expected 't_ticks actor action target_or_key'");
    std::uint64_t t = 0;
    if (!parse_uint(tok[0], t)) throw fail("bad time '" + std::string(tok[0]) + "'");
    TraceEvent ev;
    ev.at = static_cast<SimTime>(t);
    try {
      ev.actor = UserId(std::string(tok[1]));
      if (tok[2] == "POST") {
        if (tok.size() != 5) throw fail("POST needs key and payload_size");
        std::size_t size = 0;
        if (!parse_uint(tok[4], size)) throw fail("bad payload size '" + std::string(tok[4]) + "'");
        StorageKey key = parse_storage_key(tok[3]);
        if (key.owner != ev.actor) throw fail("POST to a key not owned by the actor");
        ev.action = PostAction{std::move(key), size};
      } else if (tok[2] == "LOOKUP") {
        if (tok.size() != 4) throw fail("LOOKUP takes exactly one key");
        ev.action = LookupAction{parse_storage_key(tok[3])};
      } else if (tok[2] == "FRIENDREQ") {
        if (tok.size() != 4) throw fail("FRIENDREQ takes exactly one target");
        UserId target{std::string(tok[3])};
        if (target == ev.actor) throw fail("friend request to self");
        ev.action = FriendRequestAction{std::move(target)};
      } else {
        throw fail("unknown action '" + std::string(tok[2]) + "'");
      }
    } catch (const TraceError&) {
      throw;
    } catch (const Error& e) {
      throw fail(e.what());
    }
    if (!events.empty() && ev.at < events.back().at)
      throw TraceError(Errc::TraceOrderError, lineno,
                       "time " + std::to_string(ev.at) + " precedes " +
                           std::to_string(events.back().at));
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<TraceEvent> load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open trace: " + path.string());
  return parse_trace(in);
}

void write_trace(std::ostream& out, TraceSource& source) {
  while (auto e = source.next()) out << format_trace_line(*e) << '\n';
}

}  // namespace socicache
