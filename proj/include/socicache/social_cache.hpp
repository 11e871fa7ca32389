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

// Social cache: interaction tracking (most-used-contacts list), the three
// subscription selection strategies, pub/sub update dissemination with
// social bootstrapping, and the two-layer store of pushed content.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "socicache/core.hpp"
#include "socicache/metrics.hpp"
#include "socicache/overlay.hpp"
#include "socicache/random.hpp"

namespace socicache {

inline constexpr std::size_t kMucCapacity = 150;
inline constexpr std::size_t kDefaultChannelLimit = 15;
inline constexpr std::size_t kDefaultLookupsPerInterval = 150;
inline constexpr Duration kDefaultUpdateInterval = 50 * kTicksPerSecond;

enum class StrategyKind : std::uint8_t { Random, Trend, SocialScore };
enum class SelectionTrigger : std::uint8_t { TimeBased, LookupCountBased };

std::string_view to_string(StrategyKind kind);
std::string_view to_string(SelectionTrigger trigger);
StrategyKind parse_strategy_kind(std::string_view text);
SelectionTrigger parse_selection_trigger(std::string_view text);

struct InteractionWeights {
  std::array<double, kInteractionKindCount> values{1.0, 1.0, 1.0, 1.0, 1.0};

  double operator[](InteractionKind kind) const {
    return values[static_cast<std::size_t>(kind)];
  }
  double& operator[](InteractionKind kind) {
    return values[static_cast<std::size_t>(kind)];
  }
};

struct StrategyConfig {
  StrategyKind kind = StrategyKind::SocialScore;
  double alpha = 0.5;
  double beta = 0.5;
  InteractionWeights weights;
  std::size_t n = kDefaultChannelLimit;       // parallel update channels
  std::size_t m = kDefaultLookupsPerInterval;  // tracked lookups per interval
  Duration update_interval = kDefaultUpdateInterval;
  SelectionTrigger trigger = SelectionTrigger::TimeBased;
  std::uint64_t rng_seed = 1;

  // Throws Errc::InvalidWeights or Errc::ConfigError.
  void validate() const;
};

struct TimedInteraction {
  InteractionKind kind = InteractionKind::Lookup;
  SimTime at = 0;
};

// Interaction history with one contact. Aggregates are maintained on append
// so that scores never rescan the history.
class MucEntry {
 public:
  explicit MucEntry(UserId user) : user_(std::move(user)) {}

  // Events must arrive in non-decreasing time; throws Errc::InvalidArgument.
  void append(InteractionKind kind, SimTime at);

  const UserId& user() const { return user_; }
  std::span<const TimedInteraction> events() const { return events_; }
  std::size_t event_count() const { return events_.size(); }
  std::uint64_t lookup_count() const { return kind_counts_[0]; }
  std::uint64_t count_of(InteractionKind kind) const {
    return kind_counts_[static_cast<std::size_t>(kind)];
  }
  double weighted_sum(const InteractionWeights& w) const;
  SimTime first_at() const { return events_.front().at; }
  SimTime last_at() const { return events_.back().at; }

 private:
  UserId user_;
  std::vector<TimedInteraction> events_;
  std::array<std::uint64_t, kInteractionKindCount> kind_counts_{};
};

class MucList {
 public:
  explicit MucList(std::size_t max_users = kMucCapacity) : max_users_(max_users) {}

  bool contains(const UserId& user) const { return entries_.contains(user); }
  const MucEntry* find(const UserId& user) const;
  const std::map<UserId, MucEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_users() const { return max_users_; }
  bool full() const { return entries_.size() >= max_users_; }
  // |I|: number of events across all tracked users.
  std::uint64_t total_events() const { return total_events_; }

  // Appends to an existing entry or creates one. Callers make room first
  // when full(); see record_lookup().
  void append(const UserId& user, InteractionKind kind, SimTime at);
  bool erase(const UserId& user);
  void clear();

 private:
  std::map<UserId, MucEntry> entries_;
  std::size_t max_users_;
  std::uint64_t total_events_ = 0;
};

// Weighted interactions with user over all monitored interactions. Zero when
// nothing has been monitored or user is not tracked.
double tie_strength(const MucList& muc, const UserId& user,
                    const InteractionWeights& weights);

// Normalised average gap between successive interactions. For events
// T_0..T_n: (sum of gaps / max(n - 1, 1)) / (now - T_0). Zero with fewer than
// two events or when now == T_0. Throws Errc::UnknownUser if untracked.
double mil(const MucList& muc, const UserId& user, SimTime now);
double mil(const MucEntry& entry, SimTime now);

// alpha * tie_strength + beta * mil. Throws Errc::InvalidWeights when
// alpha + beta == 0 and Errc::UnknownUser when untracked.
double social_score(const MucList& muc, const UserId& user,
                    const StrategyConfig& cfg, SimTime now);

struct RankedUser {
  UserId user;
  double value = 0.0;
};

// All tracked users, best first: higher value, then ascending UserId.
// Trend and Random rank by lookup count, SocialScore by social_score.
std::vector<RankedUser> rank_users(const MucList& muc, const StrategyConfig& cfg,
                                   SimTime now);

// Top cfg.n users of rank_users().
std::vector<UserId> select_top(const MucList& muc, const StrategyConfig& cfg,
                               SimTime now);

struct SubscriptionDiff {
  std::set<UserId> to_subscribe;
  std::set<UserId> to_unsubscribe;

  bool empty() const { return to_subscribe.empty() && to_unsubscribe.empty(); }
  friend bool operator==(const SubscriptionDiff&, const SubscriptionDiff&) = default;
};

SubscriptionDiff diff_subscriptions(std::span<const UserId> selected,
                                    const std::set<UserId>& channels);

// Tracks one interaction. When a new user arrives at a full list, the
// lowest-ranked tracked user is evicted first and returned.
std::optional<UserId> record_lookup(MucList& muc, const UserId& user,
                                    InteractionKind kind, SimTime now,
                                    const StrategyConfig& cfg);

// Pushed content: subscribed user -> key -> latest object.
class SocialStore {
 public:
  // Overwrites the held object unless it has a newer version. Returns false
  // when the incoming object is older and was dropped.
  bool put(const UserId& from, const ContentObject& content);
  const ContentObject* find(const StorageKey& key) const;
  std::size_t purge(const UserId& user);

  bool holds_user(const UserId& user) const { return by_user_.contains(user); }
  const std::map<UserId, std::unordered_map<StorageKey, ContentObject>>& by_user() const {
    return by_user_;
  }
  std::size_t item_count() const { return item_count_; }

 private:
  std::map<UserId, std::unordered_map<StorageKey, ContentObject>> by_user_;
  std::size_t item_count_ = 0;
};

// Services a peer's cache layers need from the hosting simulation.
struct PeerContext {
  DhtStore& dht;
  MessageDispatcher& dispatcher;
  Counters& counters;
  SimTime now = 0;
};

enum class UpdateOutcome { Accepted, Ignored };

class SocialCache {
 public:
  SocialCache(UserId self, StrategyConfig cfg, bool bootstrapping = true);

  const UserId& self() const { return self_; }
  const StrategyConfig& config() const { return cfg_; }
  bool bootstrapping() const { return bootstrapping_; }

  // Lookup side: own content first, then content pushed by subscriptions.
  std::optional<ContentObject> lookup(const StorageKey& key) const;

  // Tracks a lookup of owner's content and fires the strategy's immediate
  // action: Random replaces a random channel for an unsubscribed owner,
  // Trend/SocialScore subscribe directly while channels are below n.
  // With the lookup-count trigger, every m tracked lookups run a selection.
  void on_lookup(const UserId& owner, PeerContext& ctx);

  // Non-lookup interactions (friend requests, likes, ...). Not tracked by
  // the random strategy, whose list mirrors its subscriptions.
  void on_interaction(const UserId& user, InteractionKind kind, PeerContext& ctx);

  // Ranks the tracked users and returns the subscription changes; Trend
  // clears the list afterwards, SocialScore keeps it, Random returns empty.
  SubscriptionDiff run_selection(SimTime now);
  // run_selection() followed by apply_diff().
  void selection_tick(PeerContext& ctx);

  // Throws Errc::CapExceeded (and applies nothing) if the result would
  // exceed n channels.
  void apply_diff(const SubscriptionDiff& diff, PeerContext& ctx);

  // Stores own content and pushes it to every receiver.
  void publish(const ContentObject& content, PeerContext& ctx);

  void on_subscribe_received(const UserId& subscriber, PeerContext& ctx);
  void on_unsubscribe_received(const UserId& subscriber);
  UpdateOutcome on_social_update(const UserId& from, const ContentObject& content);
  std::size_t on_bootstrap_dump(const UserId& from,
                                std::span<const ContentObject> contents);

  // Routes social-cache envelopes; returns false for kinds it does not own.
  bool handle_message(const MessageEnvelope& env, PeerContext& ctx);

  const MucList& muc() const { return muc_; }
  const std::set<UserId>& channels() const { return channels_; }
  const std::set<UserId>& receivers() const { return receivers_; }
  const SocialStore& store() const { return store_; }
  const std::map<StorageKey, ContentObject>& own_content() const { return own_; }

 private:
  void subscribe(const UserId& user, PeerContext& ctx);
  void unsubscribe(const UserId& user, PeerContext& ctx);
  void random_select(const UserId& user, PeerContext& ctx);
  void send(const UserId& to, MessageKind kind, Bytes payload, PeerContext& ctx);

  UserId self_;
  StrategyConfig cfg_;
  bool bootstrapping_;
  Rng rng_;
  MucList muc_;
  std::set<UserId> channels_;
  std::set<UserId> receivers_;
  SocialStore store_;
  std::map<StorageKey, ContentObject> own_;
  std::size_t lookups_since_selection_ = 0;
};

}  // namespace socicache
