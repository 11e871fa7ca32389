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
#include "socicache/current_cache.hpp"

namespace socicache {

CurrentCache::CurrentCache(std::size_t capacity, Duration ttl)
    : capacity_(capacity), ttl_(ttl) {
  if (capacity == 0) throw Error(Errc::InvalidArgument, "cache capacity must be positive");
  if (ttl <= 0) throw Error(Errc::InvalidArgument, "cache ttl must be positive");
}

std::optional<ContentObject> CurrentCache::lookup(const StorageKey& key,
                                                  SimTime now) {
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++misses_;
    return std::nullopt;
  }
  if (!it->second->valid_at(now)) {
    order_.erase(it->second);
    index_.erase(it);
    ++misses_;
    return std::nullopt;
  }
  order_.splice(order_.begin(), order_, it->second);
  ++hits_;
  return it->second->content;
}

std::optional<StorageKey> CurrentCache::insert(const ContentObject& content,
                                               SimTime now) {
  auto it = index_.find(content.key);
  if (it != index_.end()) {
    it->second->content = content;
    it->second->inserted_at = now;
    order_.splice(order_.begin(), order_, it->second);
    return std::nullopt;
  }
  order_.push_front(CacheEntry{content, now, ttl_});
  index_.emplace(content.key, order_.begin());
  if (index_.size() <= capacity_) return std::nullopt;

  StorageKey victim = std::move(order_.back().content.key);
  index_.erase(victim);
  order_.pop_back();
  return victim;
}

std::vector<StorageKey> CurrentCache::recency() const {
  std::vector<StorageKey> keys;
  keys.reserve(order_.size());
  for (const auto& e : order_) keys.push_back(e.content.key);
  return keys;
}

}  // namespace socicache
