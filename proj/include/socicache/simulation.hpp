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

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "socicache/digest.hpp"
#include "socicache/metrics.hpp"
#include "socicache/overlay.hpp"
#include "socicache/peer.hpp"
#include "socicache/workload.hpp"

namespace socicache {

// Single-threaded discrete-event loop over one scenario. Trace events are
// processed in order; selection ticks and metric samples fire on their own
// cadence, each after every trace event scheduled at the same instant.
// Messages are delivered after every trace event and every peer's tick.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg);

  // Peers are online from creation. Unknown users in a trace are added on
  // first mention.
  Peer& add_peer(const UserId& id);
  Peer* find_peer(const UserId& id);
  const Peer* find_peer(const UserId& id) const;
  const std::vector<std::unique_ptr<Peer>>& peers() const { return peers_; }

  // Runs the whole trace, fires the remaining timers up to sim_duration,
  // then drains in-flight messages.
  void run(TraceSource& trace);

  void step(const TraceEvent& event);
  // Fires every timer scheduled at or before t.
  void advance_through(SimTime t);
  // Delivers every in-flight message.
  void drain();

  // Number of social-store items whose version differs from the DHT's.
  std::size_t consistency_violations() const;
  // Pairs where u subscribes to v but v does not list u as receiver, or
  // the reverse.
  std::size_t symmetry_violations() const;

  SimTime now() const { return now_; }
  const ScenarioConfig& config() const { return cfg_; }
  const DhtStore& dht() const { return dht_; }
  MessageDispatcher& dispatcher() { return dispatcher_; }
  const MessageDispatcher& dispatcher() const { return dispatcher_; }
  // Request-level counters merged with overlay traffic counters.
  Counters counters() const;
  const MetricsLedger& ledger() const { return ledger_; }
  std::string trace_hash() const { return trace_hash_.hex(); }
  std::uint64_t events_processed() const { return events_; }
  std::size_t max_channels_seen() const { return max_channels_; }
  std::size_t max_muc_seen() const { return max_muc_; }

  std::uint64_t social_cache_items() const;
  std::uint64_t current_cache_items() const;

  RunSummary summary(std::string label) const;

 private:
  PeerContext context();
  void pump();
  void deliver(const MessageEnvelope& env);
  void fire_timers(SimTime limit, bool inclusive);
  void selection_round();
  void take_sample();
  void observe_caps();

  ScenarioConfig cfg_;
  PeerOptions peer_options_;
  DhtStore dht_;
  MessageDispatcher dispatcher_;
  Counters counters_;
  MetricsLedger ledger_;
  std::vector<std::unique_ptr<Peer>> peers_;
  std::unordered_map<UserId, std::size_t> index_;
  SimTime now_ = 0;
  SimTime next_selection_;
  SimTime next_sample_;
  Fnv1a trace_hash_;
  std::uint64_t events_ = 0;
  std::size_t max_channels_ = 0;
  std::size_t max_muc_ = 0;
};

}  // namespace socicache
