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
#include <optional>

#include "socicache/core.hpp"
#include "socicache/current_cache.hpp"
#include "socicache/social_cache.hpp"

namespace socicache {

enum class CacheSetup : std::uint8_t { None, CurrentOnly, SocialOnly, Both };

std::string_view to_string(CacheSetup setup);
CacheSetup parse_cache_setup(std::string_view text);

inline bool current_enabled(CacheSetup s) {
  return s == CacheSetup::CurrentOnly || s == CacheSetup::Both;
}
inline bool social_enabled(CacheSetup s) {
  return s == CacheSetup::SocialOnly || s == CacheSetup::Both;
}

enum class Tier : std::uint8_t { SocialCache, CurrentCache, Overlay };

std::string_view to_string(Tier tier);

struct LookupResult {
  ContentObject content;
  Tier source = Tier::Overlay;
};

struct PeerOptions {
  CacheSetup cache_setup = CacheSetup::Both;
  std::size_t cache_capacity = kDefaultCacheCapacity;
  Duration cache_ttl = kDefaultCacheTtl;
  StrategyConfig strategy;
  bool bootstrapping = true;
};

// One simulated instance: the information cache sitting between the
// application and the overlay, with its current and social tiers.
class Peer {
 public:
  Peer(UserId id, const PeerOptions& options);

  const UserId& id() const { return id_; }
  CacheSetup cache_setup() const { return setup_; }

  // Resolves a request through social cache, current cache, then overlay.
  // Tracks the owner for subscription selection first. Returns nullopt when
  // the key exists nowhere (counted as unanswered).
  std::optional<LookupResult> handle_request(const StorageKey& key, PeerContext& ctx);

  // Publishes new content under one of this peer's keys. Throws
  // Errc::NotOwner for foreign keys.
  ContentObject add_content(const StorageKey& key, Bytes payload, PeerContext& ctx);

  // Sends a friend request notice and tracks the interaction.
  void send_friend_request(const UserId& target, PeerContext& ctx);

  void on_message(const MessageEnvelope& env, PeerContext& ctx);

  // Time-based selection trigger; a no-op without a social tier.
  void selection_tick(PeerContext& ctx);

  const CurrentCache* current() const { return current_.get(); }
  const SocialCache* social() const { return social_.get(); }

 private:
  UserId id_;
  CacheSetup setup_;
  std::unique_ptr<CurrentCache> current_;
  std::unique_ptr<SocialCache> social_;
};

}  // namespace socicache
