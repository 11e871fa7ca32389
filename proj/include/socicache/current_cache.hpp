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
#include <list>
#include <optional>
#include <unordered_map>

#include "socicache/core.hpp"

namespace socicache {

inline constexpr Duration kDefaultCacheTtl = 60 * kTicksPerSecond;
inline constexpr std::size_t kDefaultCacheCapacity = 1000;

struct CacheEntry {
  ContentObject content;
  SimTime inserted_at = 0;
  Duration ttl = kDefaultCacheTtl;

  // Validity is exclusive at the boundary: an entry aged exactly ttl is gone.
  bool valid_at(SimTime now) const { return now - inserted_at < ttl; }
};

// Fixed-validity LRU cache of overlay results ("current" cache).
//
// Expired entries are only discovered by lookup; eviction on insert always
// takes the least-recently-used entry whether or not it has expired.
class CurrentCache {
 public:
  CurrentCache(std::size_t capacity = kDefaultCacheCapacity,
               Duration ttl = kDefaultCacheTtl);

  std::optional<ContentObject> lookup(const StorageKey& key, SimTime now);
  std::optional<StorageKey> insert(const ContentObject& content, SimTime now);

  bool contains(const StorageKey& key) const { return index_.contains(key); }
  std::size_t size() const { return index_.size(); }
  std::size_t capacity() const { return capacity_; }
  Duration ttl() const { return ttl_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

  // Keys from most- to least-recently used.
  std::vector<StorageKey> recency() const;

 private:
  using Recency = std::list<CacheEntry>;

  std::size_t capacity_;
  Duration ttl_;
  Recency order_;  // front = most recently used
  std::unordered_map<StorageKey, Recency::iterator> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace socicache
