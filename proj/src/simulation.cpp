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
#include "socicache/simulation.hpp"

#include <algorithm>

namespace socicache {

namespace {

PeerOptions options_for(const ScenarioConfig& cfg) {
  PeerOptions o;
  o.cache_setup = cfg.cache_setup;
  o.cache_capacity = cfg.current_cache.capacity;
  o.cache_ttl = cfg.current_cache.ttl;
  o.strategy = cfg.strategy;
  o.bootstrapping = cfg.bootstrapping;
  return o;
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& cfg)
    : cfg_(cfg),
      peer_options_(options_for(cfg)),
      dht_(cfg.replication_factor),
      dispatcher_(cfg.hop_latency),
      next_selection_(cfg.strategy.update_interval),
      next_sample_(cfg.sample_cadence) {
  cfg_.validate();
}

Peer& Simulation::add_peer(const UserId& id) {
  if (auto it = index_.find(id); it != index_.end()) return *peers_[it->second];
  index_.emplace(id, peers_.size());
  peers_.push_back(std::make_unique<Peer>(id, peer_options_));
  dispatcher_.set_online(id, true, now_);
  return *peers_.back();
}

Peer* Simulation::find_peer(const UserId& id) {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : peers_[it->second].get();
}

const Peer* Simulation::find_peer(const UserId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : peers_[it->second].get();
}

PeerContext Simulation::context() { return PeerContext{dht_, dispatcher_, counters_, now_}; }

void Simulation::deliver(const MessageEnvelope& env) {
  Peer* p = find_peer(env.to);
  if (p == nullptr) return;
  PeerContext ctx = context();
  p->on_message(env, ctx);
}

void Simulation::pump() {
  dispatcher_.pump(now_, [this](const MessageEnvelope& env) { deliver(env); });
}

void Simulation::drain() {
  dispatcher_.drain([this](const MessageEnvelope& env) { deliver(env); });
}

void Simulation::step(const TraceEvent& event) {
  if (event.at < now_)
    throw Error(Errc::TraceOrderError, "trace event at " + std::to_string(event.at) +
                                           " precedes simulation time " + std::to_string(now_));
  fire_timers(event.at, false);
  now_ = event.at;
  trace_hash_.update(format_trace_line(event));
  trace_hash_.update("\n");
  ++events_;

  Peer& actor = add_peer(event.actor);
  PeerContext ctx = context();
  std::visit(
      [&](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, PostAction>) {
          actor.add_content(a.key, Bytes(a.payload_size), ctx);
        } else if constexpr (std::is_same_v<A, LookupAction>) {
          actor.handle_request(a.key, ctx);
        } else {
          add_peer(a.target);
          actor.send_friend_request(a.target, ctx);
        }
      },
      event.action);
  pump();
}

void Simulation::advance_through(SimTime t) { fire_timers(t, true); }

void Simulation::fire_timers(SimTime limit, bool inclusive) {
  auto due = [&](SimTime at) { return inclusive ? at <= limit : at < limit; };
  while (due(next_selection_) || due(next_sample_)) {
    if (next_selection_ <= next_sample_) {
      now_ = std::max(now_, next_selection_);
      selection_round();
      next_selection_ += cfg_.strategy.update_interval;
    } else {
      now_ = std::max(now_, next_sample_);
      take_sample();
      next_sample_ += cfg_.sample_cadence;
    }
  }
}

void Simulation::selection_round() {
  for (auto& p : peers_) {
    PeerContext ctx = context();
    p->selection_tick(ctx);
    pump();
  }
  observe_caps();
}

void Simulation::observe_caps() {
  for (const auto& p : peers_) {
    if (const SocialCache* s = p->social()) {
      max_channels_ = std::max(max_channels_, s->channels().size());
      max_muc_ = std::max(max_muc_, s->muc().size());
    }
  }
}

std::uint64_t Simulation::social_cache_items() const {
  std::uint64_t n = 0;
  for (const auto& p : peers_)
    if (const SocialCache* s = p->social()) n += s->store().item_count();
  return n;
}

std::uint64_t Simulation::current_cache_items() const {
  std::uint64_t n = 0;
  for (const auto& p : peers_)
    if (const CurrentCache* c = p->current()) n += c->size();
  return n;
}

Counters Simulation::counters() const {
  Counters c = counters_;
  c.dispatcher_messages = dispatcher_.dispatched();
  c.dht_lookups = dht_.lookups();
  c.dht_puts = dht_.puts();
  c.bytes_read = dht_.bytes_read();
  c.bytes_written = dht_.bytes_written();
  return c;
}

void Simulation::take_sample() {
  observe_caps();
  MetricsRow row;
  row.t = now_;
  row.counters = counters();
  row.social_cache_items = social_cache_items();
  row.current_cache_items = current_cache_items();
  std::size_t muc_total = 0;
  std::size_t social_peers = 0;
  for (const auto& p : peers_) {
    if (const SocialCache* s = p->social()) {
      muc_total += s->muc().size();
      ++social_peers;
      row.max_channels = std::max(row.max_channels, s->channels().size());
      row.max_muc_size = std::max(row.max_muc_size, s->muc().size());
    }
  }
  row.muc_size_mean = social_peers == 0 ? 0.0
                                        : static_cast<double>(muc_total) /
                                              static_cast<double>(social_peers);
  ledger_.append(std::move(row));
}

void Simulation::run(TraceSource& trace) {
  while (auto event = trace.next()) step(*event);
  advance_through(cfg_.sim_duration);
  drain();
}

std::size_t Simulation::consistency_violations() const {
  std::size_t bad = 0;
  for (const auto& p : peers_) {
    const SocialCache* s = p->social();
    if (s == nullptr) continue;
    for (const auto& [user, items] : s->store().by_user()) {
      for (const auto& [key, content] : items) {
        const ContentObject* truth = dht_.peek(key);
        if (truth == nullptr || truth->version != content.version) ++bad;
      }
    }
  }
  return bad;
}

std::size_t Simulation::symmetry_violations() const {
  std::size_t bad = 0;
  for (const auto& p : peers_) {
    const SocialCache* s = p->social();
    if (s == nullptr) continue;
    for (const auto& channel : s->channels()) {
      const Peer* other = find_peer(channel);
      if (other == nullptr || other->social() == nullptr ||
          !other->social()->receivers().contains(p->id()))
        ++bad;
    }
    for (const auto& receiver : s->receivers()) {
      const Peer* other = find_peer(receiver);
      if (other == nullptr || other->social() == nullptr ||
          !other->social()->channels().contains(p->id()))
        ++bad;
    }
  }
  return bad;
}

RunSummary Simulation::summary(std::string label) const {
  RunSummary s;
  s.label = std::move(label);
  s.strategy = std::string(to_string(cfg_.strategy.kind));
  s.cache_setup = std::string(to_string(cfg_.cache_setup));
  s.seed = cfg_.seed;
  s.trace_hash = trace_hash();
  s.counters = counters();
  s.social_cache_items = social_cache_items();
  s.current_cache_items = current_cache_items();
  s.max_channels = max_channels_;
  s.max_muc_size = max_muc_;
  return s;
}

}  // namespace socicache
