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

// Simulated DHT storage and message dispatcher. Stands in for the overlay:
// no routing, only the store/load semantics and traffic accounting.

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "socicache/core.hpp"

namespace socicache {

inline constexpr unsigned kDefaultReplicationFactor = 4;

class DhtStore {
 public:
  explicit DhtStore(unsigned replication_factor = kDefaultReplicationFactor);

  // Last writer wins by version; a lower version than the stored one throws
  // Errc::StaleWrite and leaves the store untouched.
  void put(const ContentObject& content);

  // Counted overlay lookup.
  std::optional<ContentObject> get(const StorageKey& key);

  // Uncounted inspection, for checks and authoritative version reads.
  const ContentObject* peek(const StorageKey& key) const;

  std::size_t size() const { return entries_.size(); }
  unsigned replication_factor() const { return replication_factor_; }
  std::uint64_t lookups() const { return lookups_; }
  std::uint64_t puts() const { return puts_; }
  std::uint64_t bytes_read() const { return bytes_read_; }
  std::uint64_t bytes_written() const { return bytes_written_; }

 private:
  std::unordered_map<StorageKey, ContentObject> entries_;
  unsigned replication_factor_;
  std::uint64_t lookups_ = 0;
  std::uint64_t puts_ = 0;
  std::uint64_t bytes_read_ = 0;
  std::uint64_t bytes_written_ = 0;
};

enum class MessageKind : std::uint8_t {
  Subscribe,
  Unsubscribe,
  SocialUpdate,
  BootstrapDump,
  SystemNotice,
};

std::string_view to_string(MessageKind kind);

struct MessageEnvelope {
  UserId from;
  UserId to;
  MessageKind kind = MessageKind::SystemNotice;
  Bytes payload;
  SimTime sent_at = 0;
};

enum class DispatchResult { Delivered, Persisted };

using MessageHandler = std::function<void(const MessageEnvelope&)>;

// Routes envelopes to online users and persists them for offline ones.
// Delivery is deferred to pump()/drain() so handlers never re-enter the
// sender; handlers may dispatch further messages, which are delivered in
// the same pump call if they are due.
class MessageDispatcher {
 public:
  explicit MessageDispatcher(Duration hop_latency = 0);

  // Going online moves the user's persisted envelopes, in FIFO order, onto
  // the delivery queue. Returns the number of envelopes released.
  std::size_t set_online(const UserId& user, bool online, SimTime now = 0);
  bool is_online(const UserId& user) const { return online_.contains(user); }

  // Throws Errc::InvalidEnvelope for self-addressed messages.
  DispatchResult dispatch(MessageEnvelope env);

  // Delivers every queued envelope due at or before now.
  std::size_t pump(SimTime now, const MessageHandler& handler);
  // Delivers until the queue is empty, regardless of due time.
  std::size_t drain(const MessageHandler& handler);

  std::size_t in_flight() const { return queue_.size(); }
  std::size_t pending(const UserId& user) const;
  Duration hop_latency() const { return hop_latency_; }

  std::uint64_t dispatched() const { return delivered_ + persisted_; }
  std::uint64_t delivered() const { return delivered_; }
  std::uint64_t persisted() const { return persisted_; }
  std::uint64_t handled() const { return handled_; }

 private:
  struct Queued {
    SimTime due;
    MessageEnvelope env;
  };

  std::unordered_set<UserId> online_;
  std::unordered_map<UserId, std::deque<MessageEnvelope>> pending_;
  std::deque<Queued> queue_;
  Duration hop_latency_;
  std::uint64_t delivered_ = 0;
  std::uint64_t persisted_ = 0;
  std::uint64_t handled_ = 0;
};

// Wire encoding of content objects carried by SocialUpdate and
// BootstrapDump envelopes.
Bytes encode_contents(std::span<const ContentObject> contents);
std::vector<ContentObject> decode_contents(std::span<const std::byte> bytes);

}  // namespace socicache
