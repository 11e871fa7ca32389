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

#include <set>
#include <sstream>

#include "socicache/workload.hpp"

using namespace socicache;

namespace {

ScenarioConfig small(std::size_t peers, std::size_t friends, Duration duration = kTicksPerHour) {
  ScenarioConfig c;
  c.peer_count = peers;
  c.friends_per_user = friends;
  c.sim_duration = duration;
  return c;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

}  // namespace

TEST_CASE("downsampled interval") {
  CHECK(sampled_interval(43.0402, 869.458, 2) == doctest::Approx(10.1006).epsilon(1e-5));
  CHECK(sampled_interval(43.5, 870, 2) == doctest::Approx(10.0));
  CHECK(code_of([] { sampled_interval(0, 870, 2); }) == Errc::InvalidArgument);
  CHECK(code_of([] { sampled_interval(1, -1, 2); }) == Errc::InvalidArgument);
  CHECK(code_of([] { sampled_interval(1, 1, 0); }) == Errc::InvalidArgument);
}

TEST_CASE("default data-set statistics") {
  const DatasetStats d;
  CHECK(d.total_egos == 60102);
  CHECK(d.avg_alters == doctest::Approx(25.7177));
  CHECK(d.avg_ts_friend_request == doctest::Approx(36.7332));
  CHECK(d.avg_ts_interaction == doctest::Approx(43.0402));
  CHECK(d.experiment_span == doctest::Approx(869.458));
}

TEST_CASE("post gap keeps the data set's per-user interaction count") {
  ScenarioConfig c = small(8, 2, 2 * kTicksPerDay);
  // Over 2 days the data set's rate gives about 10.1 posts per day per user.
  const double posts = static_cast<double>(c.sim_duration) / c.post_mean_gap();
  CHECK(posts == doctest::Approx(2 * 10.1006).epsilon(1e-4));
}

TEST_CASE("generator is deterministic for a fixed seed") {
  const auto c = small(4, 1);
  const auto a = generate_trace(c);
  const auto b = generate_trace(c);
  CHECK_FALSE(a.empty());
  CHECK(a == b);
  auto other = c;
  other.seed = 2;
  CHECK(generate_trace(other) != a);
}

TEST_CASE("friend count boundaries") {
  const auto full = small(64, 63, 10 * kTicksPerMinute);
  TraceGenerator g(full);
  for (const auto& friends : g.friend_graph()) CHECK(friends.size() == 63);
  CHECK(code_of([] { TraceGenerator(small(64, 64)); }) == Errc::ConfigError);
  CHECK(code_of([] { TraceGenerator(small(5, 3)); }) == Errc::ConfigError);
}

TEST_CASE("generated friendship graph is regular and symmetric") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto c = small(20, 7 - 1);
    c.seed = seed;
    TraceGenerator g(c);
    const auto& graph = g.friend_graph();
    for (std::size_t u = 0; u < graph.size(); ++u) {
      CHECK(graph[u].size() == 6);
      std::set<std::uint32_t> uniq(graph[u].begin(), graph[u].end());
      CHECK(uniq.size() == 6);
      CHECK_FALSE(uniq.contains(static_cast<std::uint32_t>(u)));
      for (auto v : graph[u]) {
        const auto& back = graph[v];
        CHECK(std::find(back.begin(), back.end(), u) != back.end());
      }
    }
  }
}

TEST_CASE("generated trace is ordered and well-formed") {
  auto c = small(16, 4, 2 * kTicksPerHour);
  const auto trace = generate_trace(c);
  TraceGenerator g(c);
  std::set<std::pair<std::string, std::string>> requested;
  std::set<std::string> posted;
  SimTime prev = 0;
  const SimTime settled = c.effective_phases().back();
  std::size_t lookups = 0;
  for (const auto& e : trace) {
    CHECK(e.at >= prev);
    CHECK(e.at < c.sim_duration);
    prev = e.at;
    if (const auto* p = std::get_if<PostAction>(&e.action)) {
      CHECK(p->key.owner == e.actor);
      posted.insert(p->key.str());
    } else if (const auto* l = std::get_if<LookupAction>(&e.action)) {
      if (e.at >= settled) ++lookups;
      // Lookups only target content that exists, of a befriended user.
      CHECK(posted.contains(l->key.str()));
      const auto pair = std::minmax(e.actor.str(), l->key.owner.str());
      CHECK(requested.contains({pair.first, pair.second}));
    } else {
      const auto& f = std::get<FriendRequestAction>(e.action);
      requested.insert(std::minmax(e.actor.str(), f.target.str()));
    }
  }
  // Every user posts its profile at t = 0.
  for (const auto& u : g.users()) CHECK(posted.contains(u.str() + "/profile"));
  CHECK(requested.size() == 16 * 4 / 2);
  // Once every friendship exists: about one lookup per user every two seconds.
  const double expected = 16.0 * static_cast<double>(c.sim_duration - settled) / 2000.0;
  CHECK(static_cast<double>(lookups) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("friend requests arrive in the initial batch and two later phases") {
  auto c = small(12, 4, kTicksPerHour);
  c.friend_request_phases = std::vector<SimTime>{20 * kTicksPerMinute, 40 * kTicksPerMinute};
  std::set<SimTime> times;
  for (const auto& e : generate_trace(c))
    if (std::holds_alternative<FriendRequestAction>(e.action)) times.insert(e.at);
  CHECK(times == std::set<SimTime>{0, 20 * kTicksPerMinute, 40 * kTicksPerMinute});
}

TEST_CASE("trace text round-trips") {
  const auto c = small(6, 2, 10 * kTicksPerMinute);
  const auto trace = generate_trace(c);
  std::stringstream buf;
  TraceGenerator g(c);
  write_trace(buf, g);
  CHECK(parse_trace(buf) == trace);
}

TEST_CASE("trace parsing") {
  std::istringstream ok(
      "# t actor action target [size]\n"
      "0 alice POST alice/profile 10\n"
      "\n"
      "5 bob FRIENDREQ alice\n"
      "9 bob LOOKUP alice/profile\n");
  const auto events = parse_trace(ok);
  REQUIRE(events.size() == 3);
  CHECK(std::get<PostAction>(events[0].action).payload_size == 10);
  CHECK(std::get<FriendRequestAction>(events[1].action).target == UserId("alice"));
  CHECK(events[2].at == 9);

  std::istringstream regress("10 a LOOKUP b/p\n5 a LOOKUP b/p\n");
  try {
    parse_trace(regress);
    FAIL("time regression accepted");
  } catch (const TraceError& e) {
    CHECK(e.code() == Errc::TraceOrderError);
    CHECK(e.line() == 2);
  }

  std::istringstream bad("0 a LOOKUP b/p\n1 a JUMP b/p\n");
  try {
    parse_trace(bad);
    FAIL("bad action accepted");
  } catch (const TraceError& e) {
    CHECK(e.code() == Errc::TraceFormatError);
    CHECK(e.line() == 2);
  }

  std::istringstream foreign("0 a POST b/p 3\n");
  CHECK_THROWS_AS(parse_trace(foreign), TraceError);
  std::istringstream short_line("0 a LOOKUP\n");
  CHECK_THROWS_AS(parse_trace(short_line), TraceError);
}

TEST_CASE("scenario validation names the key") {
  auto c = small(10, 3);
  c.current_cache.capacity = 0;
  try {
    c.validate();
    FAIL("invalid config accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
    CHECK(std::string(e.what()).find("current_cache.capacity") != std::string::npos);
  }
  auto p = small(10, 2);
  p.friend_request_phases = std::vector<SimTime>{p.sim_duration};
  CHECK_THROWS_AS(p.validate(), Error);
}
