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
#include "socicache/overlay.hpp"

#include <cstring>

namespace socicache {

DhtStore::DhtStore(unsigned replication_factor)
    : replication_factor_(replication_factor) {
  if (replication_factor == 0)
    throw Error(Errc::InvalidArgument, "replication factor must be positive");
}

void DhtStore::put(const ContentObject& content) {
  auto it = entries_.find(content.key);
  if (it != entries_.end() && content.version < it->second.version) {
    throw Error(Errc::StaleWrite,
                "stale write to " + content.key.str() + ": version " +
                    std::to_string(content.version) + " < stored " +
                    std::to_string(it->second.version));
  }
  if (it == entries_.end())
    entries_.emplace(content.key, content);
  else
    it->second = content;
  ++puts_;
  bytes_written_ += content.payload.size() * replication_factor_;
}

std::optional<ContentObject> DhtStore::get(const StorageKey& key) {
  ++lookups_;
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  bytes_read_ += it->second.payload.size();
  return it->second;
}

const ContentObject* DhtStore::peek(const StorageKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::Subscribe: return "Subscribe";
    case MessageKind::Unsubscribe: return "Unsubscribe";
    case MessageKind::SocialUpdate: return "SocialUpdate";
    case MessageKind::BootstrapDump: return "BootstrapDump";
    case MessageKind::SystemNotice: return "SystemNotice";
  }
  return "Unknown";
}

MessageDispatcher::MessageDispatcher(Duration hop_latency)
    : hop_latency_(hop_latency) {
  if (hop_latency < 0)
    throw Error(Errc::InvalidArgument, "hop latency must be non-negative");
}

std::size_t MessageDispatcher::set_online(const UserId& user, bool online,
                                          SimTime now) {
  if (!online) {
    online_.erase(user);
    return 0;
  }
  online_.insert(user);
  auto it = pending_.find(user);
  if (it == pending_.end()) return 0;
  const std::size_t released = it->second.size();
  for (auto& env : it->second) queue_.push_back({now + hop_latency_, std::move(env)});
  pending_.erase(it);
  return released;
}

DispatchResult MessageDispatcher::dispatch(MessageEnvelope env) {
  if (env.from == env.to)
    throw Error(Errc::InvalidEnvelope,
                "self-addressed " + std::string(to_string(env.kind)) +
                    " from " + env.from.str());
  if (!online_.contains(env.to)) {
    pending_[env.to].push_back(std::move(env));
    ++persisted_;
    return DispatchResult::Persisted;
  }
  const SimTime due = env.sent_at + hop_latency_;
  queue_.push_back({due, std::move(env)});
  ++delivered_;
  return DispatchResult::Delivered;
}

std::size_t MessageDispatcher::pump(SimTime now, const MessageHandler& handler) {
  std::size_t count = 0;
  while (!queue_.empty() && queue_.front().due <= now) {
    MessageEnvelope env = std::move(queue_.front().env);
    queue_.pop_front();
    ++handled_;
    ++count;
    handler(env);
  }
  return count;
}

std::size_t MessageDispatcher::drain(const MessageHandler& handler) {
  std::size_t count = 0;
  while (!queue_.empty()) {
    MessageEnvelope env = std::move(queue_.front().env);
    queue_.pop_front();
    ++handled_;
    ++count;
    handler(env);
  }
  return count;
}

std::size_t MessageDispatcher::pending(const UserId& user) const {
  auto it = pending_.find(user);
  return it == pending_.end() ? 0 : it->second.size();
}

namespace {

void put_u64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xff));
}

void put_blob(Bytes& out, const void* data, std::size_t size) {
  put_u64(out, size);
  const auto* p = static_cast<const std::byte*>(data);
  out.insert(out.end(), p, p + size);
}

class Reader {
 public:
  explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }

  std::span<const std::byte> blob() {
    const auto size = u64();
    need(size);
    auto out = bytes_.subspan(pos_, size);
    pos_ += size;
    return out;
  }

  std::string str() {
    auto b = blob();
    return std::string(reinterpret_cast<const char*>(b.data()), b.size());
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_)
      throw Error(Errc::InvalidEnvelope, "truncated content payload");
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Bytes encode_contents(std::span<const ContentObject> contents) {
  Bytes out;
  put_u64(out, contents.size());
  for (const auto& c : contents) {
    const std::string key = c.key.str();
    put_blob(out, key.data(), key.size());
    put_u64(out, c.version);
    put_blob(out, c.author.str().data(), c.author.str().size());
    put_u64(out, static_cast<std::uint64_t>(c.created_at));
    put_blob(out, c.payload.data(), c.payload.size());
  }
  return out;
}

std::vector<ContentObject> decode_contents(std::span<const std::byte> bytes) {
  Reader in(bytes);
  const auto count = in.u64();
  std::vector<ContentObject> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    ContentObject c;
    c.key = parse_storage_key(in.str());
    c.version = in.u64();
    c.author = UserId(in.str());
    c.created_at = static_cast<SimTime>(in.u64());
    auto payload = in.blob();
    c.payload.assign(payload.begin(), payload.end());
    out.push_back(std::move(c));
  }
  if (!in.done()) throw Error(Errc::InvalidEnvelope, "trailing bytes in content payload");
  return out;
}

}  // namespace socicache
