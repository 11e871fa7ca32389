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
#include "socicache/peer.hpp"

namespace socicache {

std::string_view to_string(CacheSetup setup) {
  switch (setup) {
    case CacheSetup::None: return "None";
    case CacheSetup::CurrentOnly: return "CurrentOnly";
    case CacheSetup::SocialOnly: return "SocialOnly";
    case CacheSetup::Both: return "Both";
  }
  return "Unknown";
}

CacheSetup parse_cache_setup(std::string_view text) {
  for (auto s : {CacheSetup::None, CacheSetup::CurrentOnly, CacheSetup::SocialOnly,
                 CacheSetup::Both}) {
    if (to_string(s) == text) return s;
  }
  throw Error(Errc::ConfigError, "unknown cache setup: " + std::string(text));
}

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::SocialCache: return "SocialCache";
    case Tier::CurrentCache: return "CurrentCache";
    case Tier::Overlay: return "Overlay";
  }
  return "Unknown";
}

Peer::Peer(UserId id, const PeerOptions& options)
    : id_(std::move(id)), setup_(options.cache_setup) {
  if (current_enabled(setup_))
    current_ = std::make_unique<CurrentCache>(options.cache_capacity, options.cache_ttl);
  if (social_enabled(setup_))
    social_ = std::make_unique<SocialCache>(id_, options.strategy, options.bootstrapping);
}

std::optional<LookupResult> Peer::handle_request(const StorageKey& key,
                                                 PeerContext& ctx) {
  ++ctx.counters.total_requests;
  if (social_) {
    social_->on_lookup(key.owner, ctx);
    if (auto hit = social_->lookup(key)) {
      ++ctx.counters.social_hits;
      return LookupResult{std::move(*hit), Tier::SocialCache};
    }
  }
  if (current_) {
    if (auto hit = current_->lookup(key, ctx.now)) {
      ++ctx.counters.current_hits;
      return LookupResult{std::move(*hit), Tier::CurrentCache};
    }
  }
  auto fetched = ctx.dht.get(key);
  if (!fetched) {
    ++ctx.counters.unanswered;
    return std::nullopt;
  }
  if (current_) current_->insert(*fetched, ctx.now);
  ++ctx.counters.overlay_replies;
  return LookupResult{std::move(*fetched), Tier::Overlay};
}

ContentObject Peer::add_content(const StorageKey& key, Bytes payload,
                                PeerContext& ctx) {
  if (key.owner != id_)
    throw Error(Errc::NotOwner, id_.str() + " cannot write " + key.str());
  ContentObject content;
  content.key = key;
  const ContentObject* stored = ctx.dht.peek(key);
  content.version = stored ? stored->version + 1 : 1;
  content.payload = std::move(payload);
  content.author = id_;
  content.created_at = ctx.now;

  if (current_) current_->insert(content, ctx.now);
  ctx.dht.put(content);
  if (social_) social_->publish(content, ctx);
  return content;
}

void Peer::send_friend_request(const UserId& target, PeerContext& ctx) {
  static constexpr std::string_view kNotice = "friend-request";
  const auto* p = reinterpret_cast<const std::byte*>(kNotice.data());
  ctx.dispatcher.dispatch(MessageEnvelope{id_, target, MessageKind::SystemNotice,
                                          Bytes(p, p + kNotice.size()), ctx.now});
  if (social_) social_->on_interaction(target, InteractionKind::FriendRequest, ctx);
}

void Peer::on_message(const MessageEnvelope& env, PeerContext& ctx) {
  if (env.kind == MessageKind::SystemNotice) {
    if (social_) social_->on_interaction(env.from, InteractionKind::FriendRequest, ctx);
    return;
  }
  if (social_) social_->handle_message(env, ctx);
}

void Peer::selection_tick(PeerContext& ctx) {
  if (social_ && social_->config().trigger == SelectionTrigger::TimeBased)
    social_->selection_tick(ctx);
}

}  // namespace socicache
