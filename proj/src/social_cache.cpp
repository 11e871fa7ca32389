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
#include "socicache/social_cache.hpp"

#include <algorithm>
#include <iterator>

#include "socicache/digest.hpp"

namespace socicache {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Random: return "Random";
    case StrategyKind::Trend: return "Trend";
    case StrategyKind::SocialScore: return "SocialScore";
  }
  return "Unknown";
}

std::string_view to_string(SelectionTrigger trigger) {
  return trigger == SelectionTrigger::TimeBased ? "TimeBased" : "LookupCountBased";
}

StrategyKind parse_strategy_kind(std::string_view text) {
  for (auto k : {StrategyKind::Random, StrategyKind::Trend, StrategyKind::SocialScore}) {
    if (to_string(k) == text) return k;
  }
  throw Error(Errc::ConfigError, "unknown strategy: " + std::string(text));
}

SelectionTrigger parse_selection_trigger(std::string_view text) {
  for (auto t : {SelectionTrigger::TimeBased, SelectionTrigger::LookupCountBased}) {
    if (to_string(t) == text) return t;
  }
  throw Error(Errc::ConfigError, "unknown selection trigger: " + std::string(text));
}

void StrategyConfig::validate() const {
  if (alpha < 0 || beta < 0)
    throw Error(Errc::InvalidWeights, "alpha and beta must be non-negative");
  if (kind == StrategyKind::SocialScore && alpha + beta <= 0)
    throw Error(Errc::InvalidWeights, "alpha + beta must be positive for SocialScore");
  for (double w : weights.values) {
    if (w < 0) throw Error(Errc::InvalidWeights, "interaction weights must be non-negative");
  }
  if (n == 0) throw Error(Errc::ConfigError, "strategy.n must be positive");
  if (n > kMucCapacity)
    throw Error(Errc::ConfigError, "strategy.n cannot exceed the MUC capacity");
  if (update_interval <= 0)
    throw Error(Errc::ConfigError, "strategy.update_interval must be positive");
  if (trigger == SelectionTrigger::LookupCountBased && n >= m)
    throw Error(Errc::ConfigError, "strategy.n must be below strategy.m");
}

void MucEntry::append(InteractionKind kind, SimTime at) {
  if (!events_.empty() && at < events_.back().at)
    throw Error(Errc::InvalidArgument, "interaction time regression for " + user_.str());
  events_.push_back({kind, at});
  ++kind_counts_[static_cast<std::size_t>(kind)];
}

double MucEntry::weighted_sum(const InteractionWeights& w) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < kInteractionKindCount; ++k)
    sum += w.values[k] * static_cast<double>(kind_counts_[k]);
  return sum;
}

const MucEntry* MucList::find(const UserId& user) const {
  auto it = entries_.find(user);
  return it == entries_.end() ? nullptr : &it->second;
}

void MucList::append(const UserId& user, InteractionKind kind, SimTime at) {
  auto it = entries_.find(user);
  if (it == entries_.end()) {
    if (full()) throw Error(Errc::CapExceeded, "MUC list is full");
    it = entries_.emplace(user, MucEntry(user)).first;
  }
  it->second.append(kind, at);
  ++total_events_;
}

bool MucList::erase(const UserId& user) {
  auto it = entries_.find(user);
  if (it == entries_.end()) return false;
  total_events_ -= it->second.event_count();
  entries_.erase(it);
  return true;
}

void MucList::clear() {
  entries_.clear();
  total_events_ = 0;
}

double tie_strength(const MucList& muc, const UserId& user,
                    const InteractionWeights& weights) {
  if (muc.total_events() == 0) return 0.0;
  const MucEntry* e = muc.find(user);
  if (e == nullptr) return 0.0;
  return e->weighted_sum(weights) / static_cast<double>(muc.total_events());
}

double mil(const MucEntry& entry, SimTime now) {
  const std::size_t events = entry.event_count();
  if (events < 2 || now == entry.first_at()) return 0.0;
  // n gaps between n + 1 events; the gap sum telescopes to T_n - T_0.
  const std::size_t gaps = events - 1;
  const double divisor = static_cast<double>(std::max<std::size_t>(gaps - 1, 1));
  const double mean_gap = static_cast<double>(entry.last_at() - entry.first_at()) / divisor;
  return mean_gap / static_cast<double>(now - entry.first_at());
}

double mil(const MucList& muc, const UserId& user, SimTime now) {
  const MucEntry* e = muc.find(user);
  if (e == nullptr) throw Error(Errc::UnknownUser, "not tracked: " + user.str());
  return mil(*e, now);
}

namespace {

double score_entry(const MucList& muc, const MucEntry& e, const StrategyConfig& cfg,
                   SimTime now) {
  const double ts = muc.total_events() == 0
                        ? 0.0
                        : e.weighted_sum(cfg.weights) /
                              static_cast<double>(muc.total_events());
  return cfg.alpha * ts + cfg.beta * mil(e, now);
}

double rank_value(const MucList& muc, const MucEntry& e, const StrategyConfig& cfg,
                  SimTime now) {
  if (cfg.kind == StrategyKind::SocialScore) return score_entry(muc, e, cfg, now);
  return static_cast<double>(e.lookup_count());
}

bool ranks_before(const RankedUser& a, const RankedUser& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.user < b.user;
}

}  // namespace

double social_score(const MucList& muc, const UserId& user,
                    const StrategyConfig& cfg, SimTime now) {
  if (cfg.alpha + cfg.beta <= 0)
    throw Error(Errc::InvalidWeights, "alpha + beta must be positive");
  const MucEntry* e = muc.find(user);
  if (e == nullptr) throw Error(Errc::UnknownUser, "not tracked: " + user.str());
  return score_entry(muc, *e, cfg, now);
}

std::vector<RankedUser> rank_users(const MucList& muc, const StrategyConfig& cfg,
                                   SimTime now) {
  if (cfg.kind == StrategyKind::SocialScore && cfg.alpha + cfg.beta <= 0)
    throw Error(Errc::InvalidWeights, "alpha + beta must be positive");
  std::vector<RankedUser> ranked;
  ranked.reserve(muc.size());
  for (const auto& [user, entry] : muc.entries())
    ranked.push_back({user, rank_value(muc, entry, cfg, now)});
  std::sort(ranked.begin(), ranked.end(), ranks_before);
  return ranked;
}

std::vector<UserId> select_top(const MucList& muc, const StrategyConfig& cfg,
                               SimTime now) {
  std::vector<RankedUser> ranked = rank_users(muc, cfg, now);
  const std::size_t take = std::min(cfg.n, ranked.size());
  std::vector<UserId> top;
  top.reserve(take);
  for (std::size_t i = 0; i < take; ++i) top.push_back(std::move(ranked[i].user));
  return top;
}

SubscriptionDiff diff_subscriptions(std::span<const UserId> selected,
                                    const std::set<UserId>& channels) {
  SubscriptionDiff diff;
  std::set<UserId> wanted(selected.begin(), selected.end());
  std::set_difference(wanted.begin(), wanted.end(), channels.begin(), channels.end(),
                      std::inserter(diff.to_subscribe, diff.to_subscribe.end()));
  std::set_difference(channels.begin(), channels.end(), wanted.begin(), wanted.end(),
                      std::inserter(diff.to_unsubscribe, diff.to_unsubscribe.end()));
  return diff;
}

std::optional<UserId> record_lookup(MucList& muc, const UserId& user,
                                    InteractionKind kind, SimTime now,
                                    const StrategyConfig& cfg) {
  std::optional<UserId> evicted;
  if (!muc.contains(user) && muc.full() && muc.size() > 0) {
    // Lowest-ranked user: minimum value, ties resolved towards the larger id.
    std::optional<RankedUser> worst;
    for (const auto& [id, entry] : muc.entries()) {
      RankedUser r{id, rank_value(muc, entry, cfg, now)};
      if (!worst || ranks_before(*worst, r)) worst = std::move(r);
    }
    evicted = worst->user;
    muc.erase(worst->user);
  }
  muc.append(user, kind, now);
  return evicted;
}

bool SocialStore::put(const UserId& from, const ContentObject& content) {
  auto& slot = by_user_[from];
  auto it = slot.find(content.key);
  if (it == slot.end()) {
    slot.emplace(content.key, content);
    ++item_count_;
    return true;
  }
  if (content.version < it->second.version) return false;
  it->second = content;
  return true;
}

const ContentObject* SocialStore::find(const StorageKey& key) const {
  auto u = by_user_.find(key.owner);
  if (u == by_user_.end()) return nullptr;
  auto it = u->second.find(key);
  return it == u->second.end() ? nullptr : &it->second;
}

std::size_t SocialStore::purge(const UserId& user) {
  auto it = by_user_.find(user);
  if (it == by_user_.end()) return 0;
  const std::size_t n = it->second.size();
  item_count_ -= n;
  by_user_.erase(it);
  return n;
}

namespace {
std::uint64_t peer_stream(const UserId& id) {
  Fnv1a h;
  h.update(id.str());
  return h.value();
}
}  // namespace

SocialCache::SocialCache(UserId self, StrategyConfig cfg, bool bootstrapping)
    : self_(std::move(self)),
      cfg_(cfg),
      bootstrapping_(bootstrapping),
      rng_(mix_seed(cfg.rng_seed, peer_stream(self_))) {
  cfg_.validate();
}

std::optional<ContentObject> SocialCache::lookup(const StorageKey& key) const {
  if (key.owner == self_) {
    auto it = own_.find(key);
    if (it != own_.end()) return it->second;
    return std::nullopt;
  }
  if (const ContentObject* c = store_.find(key)) return *c;
  return std::nullopt;
}

void SocialCache::send(const UserId& to, MessageKind kind, Bytes payload,
                       PeerContext& ctx) {
  ctx.dispatcher.dispatch(MessageEnvelope{self_, to, kind, std::move(payload), ctx.now});
}

void SocialCache::subscribe(const UserId& user, PeerContext& ctx) {
  if (user == self_ || channels_.contains(user)) return;
  channels_.insert(user);
  ++ctx.counters.subscriptions_sent;
  send(user, MessageKind::Subscribe, {}, ctx);
}

void SocialCache::unsubscribe(const UserId& user, PeerContext& ctx) {
  if (channels_.erase(user) == 0) return;
  store_.purge(user);
  ++ctx.counters.unsubscriptions_sent;
  send(user, MessageKind::Unsubscribe, {}, ctx);
}

void SocialCache::random_select(const UserId& user, PeerContext& ctx) {
  if (channels_.contains(user)) return;
  if (channels_.size() >= cfg_.n) {
    const std::size_t index = rng_.uniform_index(channels_.size());
    const UserId victim = *std::next(channels_.begin(), static_cast<std::ptrdiff_t>(index));
    unsubscribe(victim, ctx);
    muc_.erase(victim);
  }
  subscribe(user, ctx);
}

void SocialCache::on_lookup(const UserId& owner, PeerContext& ctx) {
  if (owner == self_) return;
  record_lookup(muc_, owner, InteractionKind::Lookup, ctx.now, cfg_);

  if (cfg_.kind == StrategyKind::Random) {
    random_select(owner, ctx);
  } else if (!channels_.contains(owner) && channels_.size() < cfg_.n) {
    subscribe(owner, ctx);
  }

  if (cfg_.trigger == SelectionTrigger::LookupCountBased &&
      ++lookups_since_selection_ >= cfg_.m) {
    lookups_since_selection_ = 0;
    selection_tick(ctx);
  }
}

void SocialCache::on_interaction(const UserId& user, InteractionKind kind,
                                 PeerContext& ctx) {
  if (user == self_ || cfg_.kind == StrategyKind::Random) return;
  record_lookup(muc_, user, kind, ctx.now, cfg_);
}

SubscriptionDiff SocialCache::run_selection(SimTime now) {
  if (cfg_.kind == StrategyKind::Random) return {};
  const std::vector<UserId> top = select_top(muc_, cfg_, now);
  SubscriptionDiff diff = diff_subscriptions(top, channels_);
  if (cfg_.kind == StrategyKind::Trend) muc_.clear();
  return diff;
}

void SocialCache::selection_tick(PeerContext& ctx) {
  apply_diff(run_selection(ctx.now), ctx);
}

void SocialCache::apply_diff(const SubscriptionDiff& diff, PeerContext& ctx) {
  std::size_t resulting = channels_.size();
  for (const auto& u : diff.to_unsubscribe) resulting -= channels_.contains(u) ? 1 : 0;
  for (const auto& u : diff.to_subscribe) {
    if (u == self_) throw Error(Errc::InvalidArgument, "cannot subscribe to self");
    if (!channels_.contains(u) && !diff.to_unsubscribe.contains(u)) ++resulting;
  }
  if (resulting > cfg_.n)
    throw Error(Errc::CapExceeded, "subscription diff exceeds " +
                                       std::to_string(cfg_.n) + " channels");
  for (const auto& u : diff.to_unsubscribe) unsubscribe(u, ctx);
  for (const auto& u : diff.to_subscribe) subscribe(u, ctx);
}

void SocialCache::publish(const ContentObject& content, PeerContext& ctx) {
  own_[content.key] = content;
  if (receivers_.empty()) return;
  const Bytes payload = encode_contents(std::span(&content, 1));
  for (const auto& r : receivers_) send(r, MessageKind::SocialUpdate, payload, ctx);
}

void SocialCache::on_subscribe_received(const UserId& subscriber, PeerContext& ctx) {
  if (subscriber == self_) return;
  if (!receivers_.insert(subscriber).second) return;
  if (!bootstrapping_) return;
  std::vector<ContentObject> dump;
  dump.reserve(own_.size());
  for (const auto& [key, c] : own_) dump.push_back(c);
  ++ctx.counters.bootstrap_dumps;
  send(subscriber, MessageKind::BootstrapDump, encode_contents(dump), ctx);
}

void SocialCache::on_unsubscribe_received(const UserId& subscriber) {
  receivers_.erase(subscriber);
}

UpdateOutcome SocialCache::on_social_update(const UserId& from,
                                            const ContentObject& content) {
  if (!channels_.contains(from) || content.key.owner != from)
    return UpdateOutcome::Ignored;
  return store_.put(from, content) ? UpdateOutcome::Accepted : UpdateOutcome::Ignored;
}

std::size_t SocialCache::on_bootstrap_dump(const UserId& from,
                                           std::span<const ContentObject> contents) {
  std::size_t stored = 0;
  for (const auto& c : contents) {
    if (on_social_update(from, c) == UpdateOutcome::Accepted) ++stored;
  }
  return stored;
}

bool SocialCache::handle_message(const MessageEnvelope& env, PeerContext& ctx) {
  switch (env.kind) {
    case MessageKind::Subscribe:
      on_subscribe_received(env.from, ctx);
      return true;
    case MessageKind::Unsubscribe:
      on_unsubscribe_received(env.from);
      return true;
    case MessageKind::SocialUpdate:
      for (const auto& c : decode_contents(env.payload)) on_social_update(env.from, c);
      return true;
    case MessageKind::BootstrapDump: {
      const auto contents = decode_contents(env.payload);
      on_bootstrap_dump(env.from, contents);
      return true;
    }
    case MessageKind::SystemNotice:
      return false;
  }
  return false;
}

}  // namespace socicache
