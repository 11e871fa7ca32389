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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace socicache {

// Simulated time in milliseconds. Only the event loop advances it.
using SimTime = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kTicksPerSecond = 1000;
inline constexpr Duration kTicksPerMinute = 60 * kTicksPerSecond;
inline constexpr Duration kTicksPerHour = 60 * kTicksPerMinute;
inline constexpr Duration kTicksPerDay = 24 * kTicksPerHour;

using Bytes = std::vector<std::byte>;

enum class Errc {
  InvalidKey,
  StaleWrite,
  InvalidEnvelope,
  NotOwner,
  UnknownUser,
  InvalidWeights,
  CapExceeded,
  InvalidArgument,
  ConfigError,
  TraceFormatError,
  TraceOrderError,
  IoError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Opaque, non-empty user name. Equality is exact string equality.
class UserId {
 public:
  UserId() = default;
  explicit UserId(std::string name);

  const std::string& str() const noexcept { return name_; }
  bool empty() const noexcept { return name_.empty(); }

  friend bool operator==(const UserId&, const UserId&) = default;
  friend auto operator<=>(const UserId&, const UserId&) = default;

 private:
  std::string name_;
};

// Addressable identifier of a stored object. Encoded as "owner/path"; the
// first '/' separates the owner, so the owner never contains '/'.
struct StorageKey {
  UserId owner;
  std::string path;

  std::string str() const;

  friend bool operator==(const StorageKey&, const StorageKey&) = default;
  friend auto operator<=>(const StorageKey&, const StorageKey&) = default;
};

// Throws Errc::InvalidKey on empty owner/path, '/' in owner or a newline.
std::string format_storage_key(std::string_view owner, std::string_view path);
StorageKey make_storage_key(std::string_view owner, std::string_view path);
StorageKey parse_storage_key(std::string_view text);

// Owner recovery used by the lookup pipeline.
UserId get_username(std::string_view key);
inline const UserId& get_username(const StorageKey& key) { return key.owner; }

struct ContentObject {
  StorageKey key;
  std::uint64_t version = 0;
  Bytes payload;
  UserId author;
  SimTime created_at = 0;

  friend bool operator==(const ContentObject&, const ContentObject&) = default;
};

enum class InteractionKind : std::uint8_t {
  Lookup,
  WallPost,
  FriendRequest,
  Like,
  Comment,
};

inline constexpr std::size_t kInteractionKindCount = 5;

std::string_view to_string(InteractionKind kind);
InteractionKind parse_interaction_kind(std::string_view text);

struct InteractionRecord {
  UserId peer;
  InteractionKind kind = InteractionKind::Lookup;
  SimTime at = 0;
};

}  // namespace socicache

template <>
struct std::hash<socicache::UserId> {
  std::size_t operator()(const socicache::UserId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

template <>
struct std::hash<socicache::StorageKey> {
  std::size_t operator()(const socicache::StorageKey& key) const noexcept {
    std::size_t h = std::hash<std::string>{}(key.owner.str());
    return h ^ (std::hash<std::string>{}(key.path) + 0x9e3779b97f4a7c15ULL +
                (h << 6) + (h >> 2));
  }
};
