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
#include "socicache/core.hpp"

#include <array>

#include "socicache/digest.hpp"

namespace socicache {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidKey: return "InvalidKey";
    case Errc::StaleWrite: return "StaleWrite";
    case Errc::InvalidEnvelope: return "InvalidEnvelope";
    case Errc::NotOwner: return "NotOwner";
    case Errc::UnknownUser: return "UnknownUser";
    case Errc::InvalidWeights: return "InvalidWeights";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
    case Errc::TraceFormatError: return "TraceFormatError";
    case Errc::TraceOrderError: return "TraceOrderError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

UserId::UserId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(Errc::InvalidKey, "empty user id");
}

namespace {

void check_key_parts(std::string_view owner, std::string_view path) {
  if (owner.empty()) throw Error(Errc::InvalidKey, "storage key has empty owner");
  if (path.empty()) throw Error(Errc::InvalidKey, "storage key has empty path");
  if (owner.find('/') != std::string_view::npos)
    throw Error(Errc::InvalidKey, "owner contains '/': " + std::string(owner));
  for (std::string_view part : {owner, path}) {
    for (char c : part) {
      if (c == '\n' || c == '\r' || c == ' ' || c == '\t')
        throw Error(Errc::InvalidKey,
                    "storage key contains whitespace: " + std::string(part));
    }
  }
}

}  // namespace

std::string StorageKey::str() const { return owner.str() + '/' + path; }

std::string format_storage_key(std::string_view owner, std::string_view path) {
  check_key_parts(owner, path);
  std::string out;
  out.reserve(owner.size() + path.size() + 1);
  out.append(owner).push_back('/');
  out.append(path);
  return out;
}

StorageKey make_storage_key(std::string_view owner, std::string_view path) {
  check_key_parts(owner, path);
  return StorageKey{UserId(std::string(owner)), std::string(path)};
}

StorageKey parse_storage_key(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw Error(Errc::InvalidKey, "malformed storage key: " + std::string(text));
  return make_storage_key(text.substr(0, slash), text.substr(slash + 1));
}

UserId get_username(std::string_view key) { return parse_storage_key(key).owner; }

namespace {
constexpr std::array<std::string_view, kInteractionKindCount> kKindNames = {
    "Lookup", "WallPost", "FriendRequest", "Like", "Comment"};
}

std::string_view to_string(InteractionKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

InteractionKind parse_interaction_kind(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == text) return static_cast<InteractionKind>(i);
  }
  throw Error(Errc::InvalidArgument,
              "unknown interaction kind: " + std::string(text));
}

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string Fnv1a::hex() const { return to_hex(state_); }

}  // namespace socicache
