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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "socicache/random.hpp"
#include "socicache/social_cache.hpp"

using namespace socicache;

namespace {

UserId U(const std::string& s) { return UserId(s); }

ContentObject object(const std::string& owner, const std::string& path,
                     std::uint64_t version = 1) {
  return ContentObject{make_storage_key(owner, path), version, Bytes(2), UserId(owner), 0};
}

StrategyConfig strategy(StrategyKind kind, std::size_t n = kDefaultChannelLimit) {
  StrategyConfig c;
  c.kind = kind;
  c.n = n;
  return c;
}

// A handful of social caches wired through one dispatcher.
struct Net {
  DhtStore dht;
  MessageDispatcher dispatcher;
  Counters counters;
  std::map<UserId, SocialCache*> nodes;

  PeerContext ctx(SimTime now = 0) { return PeerContext{dht, dispatcher, counters, now}; }
  void join(SocialCache& s) {
    nodes[s.self()] = &s;
    dispatcher.set_online(s.self(), true);
  }
  std::size_t settle() {
    auto c = ctx();
    return dispatcher.drain([&](const MessageEnvelope& e) { nodes.at(e.to)->handle_message(e, c); });
  }
};

MucList muc_with(std::initializer_list<std::pair<std::string, std::vector<SimTime>>> users) {
  MucList m;
  for (const auto& [u, times] : users)
    for (auto t : times) m.append(U(u), InteractionKind::Lookup, t);
  return m;
}

}  // namespace

TEST_CASE("record_lookup appends interactions") {
  MucList m;
  const auto cfg = strategy(StrategyKind::Trend);
  record_lookup(m, U("bob"), InteractionKind::Lookup, 5, cfg);
  REQUIRE(m.size() == 1);
  CHECK(m.find(U("bob"))->lookup_count() == 1);
  record_lookup(m, U("bob"), InteractionKind::Lookup, 9, cfg);
  const auto ev = m.find(U("bob"))->events();
  CHECK(m.find(U("bob"))->lookup_count() == 2);
  CHECK(ev[0].at == 5);
  CHECK(ev[1].at == 9);
  CHECK_THROWS_AS(record_lookup(m, U("bob"), InteractionKind::Lookup, 1, cfg), Error);
}

TEST_CASE("a full list evicts its lowest-ranked user") {
  MucList m;
  const auto cfg = strategy(StrategyKind::Trend);
  for (int i = 0; i < 150; ++i) {
    const UserId u("u" + std::to_string(1000 + i));
    for (int k = 0; k <= i % 7 + 1; ++k) record_lookup(m, u, InteractionKind::Lookup, i, cfg);
  }
  // u1000 has 2 lookups; the minimum count (2) is shared by several users and
  // the largest id among them goes first.
  std::string expected;
  for (int i = 0; i < 150; ++i)
    if (i % 7 == 0) expected = "u" + std::to_string(1000 + i);
  const auto evicted = record_lookup(m, U("newcomer"), InteractionKind::Lookup, 200, cfg);
  CHECK(m.size() == 150);
  REQUIRE(evicted);
  CHECK(evicted->str() == expected);
  CHECK(m.contains(U("newcomer")));
  CHECK_FALSE(record_lookup(m, U("newcomer"), InteractionKind::Lookup, 201, cfg).has_value());
}

TEST_CASE("tie strength is the weighted share of monitored interactions") {
  InteractionWeights unit;
  MucList all;
  for (int i = 0; i < 5; ++i) all.append(U("x"), InteractionKind::Lookup, i);
  CHECK(tie_strength(all, U("x"), unit) == doctest::Approx(1.0));

  MucList part;
  for (int i = 0; i < 3; ++i) part.append(U("x"), InteractionKind::Lookup, i);
  for (int i = 0; i < 7; ++i) part.append(U("y"), InteractionKind::Lookup, i);
  CHECK(tie_strength(part, U("x"), unit) == doctest::Approx(0.3));

  // Weighted: one event of weight 2 and one of weight 1 among 6 in total.
  InteractionWeights w;
  w[InteractionKind::WallPost] = 2.0;
  MucList mixed;
  mixed.append(U("x"), InteractionKind::WallPost, 0);
  mixed.append(U("x"), InteractionKind::Lookup, 1);
  for (int i = 0; i < 4; ++i) mixed.append(U("y"), InteractionKind::Lookup, i);
  const double oracle_value = (2.0 * 1 + 1.0 * 1) / 6.0;
  CHECK(oracle_value == doctest::Approx(0.5));
  CHECK(tie_strength(mixed, U("x"), w) == doctest::Approx(oracle_value).epsilon(1e-12));

  CHECK(tie_strength(MucList{}, U("x"), unit) == 0.0);
  CHECK(tie_strength(part, U("nobody"), unit) == 0.0);
}

TEST_CASE("MIL examples") {
  const auto m = muc_with({{"x", {0, 10, 20}}, {"y", {7}}, {"z", {0, 30}}});
  CHECK(mil(m, U("x"), 30) == doctest::Approx(0.6667).epsilon(1e-4));
  CHECK(mil(m, U("x"), 30) == doctest::Approx(oracle::mil_direct({0, 10, 20}, 30)));
  CHECK(mil(m, U("y"), 30) == 0.0);
  CHECK(mil(m, U("z"), 30) == doctest::Approx(1.0));
  CHECK(mil(m, U("z"), 0) == 0.0);
  try {
    mil(m, U("nobody"), 30);
    FAIL("untracked user accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownUser);
  }
}

TEST_CASE("MIL matches the term-by-term evaluation") {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const auto n = 2 + rng.uniform_index(49);
    std::vector<SimTime> times;
    SimTime t = static_cast<SimTime>(rng.uniform_index(1000));
    for (std::size_t k = 0; k < n; ++k) {
      times.push_back(t);
      t += static_cast<SimTime>(rng.uniform_index(5000));
    }
    const SimTime now = times.back() + 1 + static_cast<SimTime>(rng.uniform_index(5000));
    MucList m;
    for (auto x : times) m.append(U("x"), InteractionKind::Lookup, x);
    const double want = oracle::mil_direct(times, now);
    const double got = mil(m, U("x"), now);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(std::abs(want), 1e-300));
  }
}

TEST_CASE("social score combines tie strength and MIL") {
  StrategyConfig cfg = strategy(StrategyKind::SocialScore);
  // 3 of 10 events, at t = 0, 10, 20, observed at t = 30.
  MucList m;
  for (SimTime t : {0, 10, 20}) m.append(U("x"), InteractionKind::Lookup, t);
  for (int i = 0; i < 7; ++i) m.append(U("y"), InteractionKind::Lookup, 25);
  CHECK(social_score(m, U("x"), cfg, 30) == doctest::Approx(0.5 * 0.3 + 0.5 * (2.0 / 3.0)));
  CHECK(social_score(m, U("x"), cfg, 30) == doctest::Approx(0.48333).epsilon(1e-4));

  cfg.alpha = 1.0;
  cfg.beta = 0.0;
  CHECK(social_score(m, U("x"), cfg, 30) == doctest::Approx(tie_strength(m, U("x"), cfg.weights)));

  cfg.alpha = 0.0;
  try {
    social_score(m, U("x"), cfg, 30);
    FAIL("zero weights accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidWeights);
  }
  cfg.alpha = 0.5;
  CHECK_THROWS_AS(social_score(m, U("nobody"), cfg, 30), Error);
}

TEST_CASE("strategy config validation") {
  StrategyConfig c;
  c.alpha = c.beta = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = StrategyConfig{};
  c.weights[InteractionKind::Like] = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = StrategyConfig{};
  c.trigger = SelectionTrigger::LookupCountBased;
  c.m = c.n;
  CHECK_THROWS_AS(c.validate(), Error);
  c.m = c.n + 1;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("trend selects the top-n by lookup count and clears the list") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::Trend, 2));
  SocialCache a(U("a"), strategy(StrategyKind::Trend)), b(U("b"), strategy(StrategyKind::Trend)),
      c(U("c"), strategy(StrategyKind::Trend));
  for (auto* s : {&me, &a, &b, &c}) net.join(*s);
  auto ctx = net.ctx(0);
  me.on_lookup(U("c"), ctx);  // fast path subscribes c
  for (int i = 0; i < 4; ++i) me.on_lookup(U("a"), ctx);  // fast path subscribes a
  CHECK(me.channels() == std::set<UserId>{U("a"), U("c")});
  for (int i = 0; i < 3; ++i) me.on_lookup(U("b"), ctx);
  net.settle();
  // Counts are now {a:4, b:3, c:1}; raise a to 5 to mirror the example.
  me.on_lookup(U("a"), ctx);

  const auto diff = me.run_selection(1);
  CHECK(diff.to_subscribe == std::set<UserId>{U("b")});
  CHECK(diff.to_unsubscribe == std::set<UserId>{U("c")});
  CHECK(me.muc().size() == 0);

  MucList m;
  for (int i = 0; i < 5; ++i) m.append(U("a"), InteractionKind::Lookup, i);
  for (int i = 0; i < 3; ++i) m.append(U("b"), InteractionKind::Lookup, i);
  m.append(U("c"), InteractionKind::Lookup, 0);
  const auto top = select_top(m, strategy(StrategyKind::Trend, 2), 10);
  const auto d2 = diff_subscriptions(top, {U("c")});
  CHECK(d2.to_subscribe == std::set<UserId>{U("a"), U("b")});
  CHECK(d2.to_unsubscribe == std::set<UserId>{U("c")});
}

TEST_CASE("social score selection at a fixed point yields an empty diff") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::SocialScore, 2));
  SocialCache a(U("a"), strategy(StrategyKind::SocialScore)), b(U("b"), strategy(StrategyKind::SocialScore));
  for (auto* s : {&me, &a, &b}) net.join(*s);
  auto ctx = net.ctx(0);
  for (SimTime t : {0, 5, 9}) {
    ctx.now = t;
    me.on_lookup(U("a"), ctx);
  }
  ctx.now = 9;
  me.on_lookup(U("b"), ctx);
  net.settle();
  const auto ranked = rank_users(me.muc(), me.config(), 10);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].user == U("a"));
  const auto diff = me.run_selection(10);
  CHECK(diff.empty());
  CHECK(me.muc().size() == 2);
}

TEST_CASE("random strategy replaces a random channel for an unsubscribed owner") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::Random, 1));
  SocialCache a(U("a"), strategy(StrategyKind::Random)), b(U("b"), strategy(StrategyKind::Random));
  for (auto* s : {&me, &a, &b}) net.join(*s);
  auto ctx = net.ctx(0);
  me.on_lookup(U("a"), ctx);
  CHECK(me.channels() == std::set<UserId>{U("a")});
  me.on_lookup(U("b"), ctx);
  CHECK(me.channels() == std::set<UserId>{U("b")});
  CHECK_FALSE(me.muc().contains(U("a")));
  CHECK(net.counters.unsubscriptions_sent == 1);
  CHECK(me.run_selection(1).empty());
}

TEST_CASE("ties are broken towards the smaller user id") {
  const auto m = muc_with({{"b", {1, 2}}, {"a", {1, 2}}, {"c", {1}}});
  const auto ranked = rank_users(m, strategy(StrategyKind::Trend), 3);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].user == U("a"));
  CHECK(ranked[1].user == U("b"));
  CHECK(ranked[2].user == U("c"));
}

TEST_CASE("selections match brute-force rankings") {
  Rng rng(2024);
  const std::vector<std::int64_t> weights{1, 2, 3, 1, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const auto users = 1 + rng.uniform_index(40);
    std::vector<oracle::Contact> contacts;
    MucList muc;
    SimTime latest = 0;
    for (std::size_t u = 0; u < users; ++u) {
      oracle::Contact c{"user" + std::to_string(rng.uniform_index(1000)), {}};
      if (muc.contains(U(c.user))) continue;
      SimTime t = static_cast<SimTime>(rng.uniform_index(100));
      const auto events = 1 + rng.uniform_index(6);
      for (std::size_t e = 0; e < events; ++e) {
        const int kind = static_cast<int>(rng.uniform_index(kInteractionKindCount));
        c.events.emplace_back(kind, t);
        muc.append(U(c.user), static_cast<InteractionKind>(kind), t);
        latest = std::max(latest, t);
        t += static_cast<SimTime>(rng.uniform_index(50));
      }
      contacts.push_back(c);
    }
    const SimTime now = latest + static_cast<SimTime>(rng.uniform_index(20));
    const std::size_t n = 1 + rng.uniform_index(15);

    StrategyConfig trend = strategy(StrategyKind::Trend, n);
    std::vector<std::string> got;
    for (const auto& u : select_top(muc, trend, now)) got.push_back(u.str());
    CHECK(got == oracle::trend_top(contacts, n));

    StrategyConfig social = strategy(StrategyKind::SocialScore, n);
    for (std::size_t k = 0; k < kInteractionKindCount; ++k)
      social.weights.values[k] = static_cast<double>(weights[k]);
    social.alpha = 0.25;
    social.beta = 0.75;
    got.clear();
    for (const auto& u : select_top(muc, social, now)) got.push_back(u.str());
    CHECK(got == oracle::social_top(contacts, weights, 1, 3, 4, now, n));
  }
}

TEST_CASE("diff application respects the channel cap") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::SocialScore, 2));
  SocialCache a(U("a"), strategy(StrategyKind::SocialScore));
  net.join(me);
  net.join(a);
  auto ctx = net.ctx(0);
  SubscriptionDiff too_many;
  too_many.to_subscribe = {U("a"), U("b"), U("c")};
  CHECK_THROWS_AS(me.apply_diff(too_many, ctx), Error);
  CHECK(me.channels().empty());
  CHECK(net.dispatcher.dispatched() == 0);

  me.apply_diff(SubscriptionDiff{}, ctx);
  CHECK(net.dispatcher.dispatched() == 0);
}

TEST_CASE("subscribing bootstraps the subscriber with the owner's content") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::SocialScore));
  SocialCache owner(U("owner"), strategy(StrategyKind::SocialScore));
  net.join(me);
  net.join(owner);
  auto ctx = net.ctx(0);
  for (int i = 0; i < 4; ++i) owner.publish(object("owner", "wall/" + std::to_string(i)), ctx);
  SubscriptionDiff d;
  d.to_subscribe = {U("owner")};
  me.apply_diff(d, ctx);
  net.settle();
  CHECK(me.store().item_count() == 4);
  CHECK(owner.receivers().size() == 1);
  CHECK(net.counters.bootstrap_dumps == 1);

  // Duplicate subscribe: no second dump.
  owner.on_subscribe_received(U("me"), ctx);
  CHECK(net.counters.bootstrap_dumps == 1);

  SubscriptionDiff u;
  u.to_unsubscribe = {U("owner")};
  me.apply_diff(u, ctx);
  net.settle();
  CHECK_FALSE(me.store().holds_user(U("owner")));
  CHECK(owner.receivers().empty());
}

TEST_CASE("bootstrapping can be disabled") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::SocialScore));
  SocialCache owner(U("owner"), strategy(StrategyKind::SocialScore), false);
  net.join(me);
  net.join(owner);
  auto ctx = net.ctx(0);
  owner.publish(object("owner", "profile"), ctx);
  owner.on_subscribe_received(U("me"), ctx);
  CHECK(owner.receivers().size() == 1);
  CHECK(net.counters.bootstrap_dumps == 0);
  CHECK(net.dispatcher.in_flight() == 0);
}

TEST_CASE("social updates overwrite and stale senders are ignored") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::SocialScore));
  SocialCache owner(U("owner"), strategy(StrategyKind::SocialScore));
  net.join(me);
  net.join(owner);
  auto ctx = net.ctx(0);
  owner.publish(object("owner", "profile", 1), ctx);
  SubscriptionDiff d;
  d.to_subscribe = {U("owner")};
  me.apply_diff(d, ctx);
  net.settle();
  CHECK(me.lookup(make_storage_key("owner", "profile"))->version == 1);

  owner.publish(object("owner", "profile", 2), ctx);
  net.settle();
  CHECK(me.store().item_count() == 1);
  CHECK(me.lookup(make_storage_key("owner", "profile"))->version == 2);

  CHECK(me.on_social_update(U("stranger"), object("stranger", "p")) == UpdateOutcome::Ignored);
  CHECK_FALSE(me.lookup(make_storage_key("stranger", "p")).has_value());
  CHECK(me.store().item_count() == 1);
}

TEST_CASE("social lookup serves own content and subscribed content only") {
  Net net;
  SocialCache me(U("me"), strategy(StrategyKind::SocialScore));
  net.join(me);
  auto ctx = net.ctx(0);
  me.publish(object("me", "profile"), ctx);
  CHECK(me.lookup(make_storage_key("me", "profile")).has_value());
  CHECK_FALSE(me.lookup(make_storage_key("other", "profile")).has_value());
}

TEST_CASE("lookup-count trigger runs a selection every m lookups") {
  Net net;
  StrategyConfig cfg = strategy(StrategyKind::Trend, 1);
  cfg.trigger = SelectionTrigger::LookupCountBased;
  cfg.m = 4;
  SocialCache me(U("me"), cfg);
  SocialCache a(U("a"), strategy(StrategyKind::Trend)), b(U("b"), strategy(StrategyKind::Trend));
  for (auto* s : {&me, &a, &b}) net.join(*s);
  auto ctx = net.ctx(0);
  me.on_lookup(U("a"), ctx);
  me.on_lookup(U("b"), ctx);
  me.on_lookup(U("b"), ctx);
  CHECK(me.channels() == std::set<UserId>{U("a")});
  me.on_lookup(U("b"), ctx);  // 4th lookup: selection picks b, clears the list
  CHECK(me.channels() == std::set<UserId>{U("b")});
  CHECK(me.muc().size() == 0);
}

TEST_CASE("strategy names round-trip") {
  for (auto k : {StrategyKind::Random, StrategyKind::Trend, StrategyKind::SocialScore})
    CHECK(parse_strategy_kind(to_string(k)) == k);
  CHECK(parse_selection_trigger("LookupCountBased") == SelectionTrigger::LookupCountBased);
  CHECK_THROWS_AS(parse_strategy_kind("Greedy"), Error);
}
