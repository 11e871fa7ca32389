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

// Independent reference implementations used only by tests. They favour
// directness over speed and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Time = std::int64_t;

// Linear-scan LRU with fixed validity. Slot 0 is the most recently used.
class RefCache {
 public:
  RefCache(std::size_t capacity, Time ttl) : capacity_(capacity), ttl_(ttl) {}

  // Returns the stored version on a hit.
  std::optional<std::uint64_t> lookup(const std::string& key, Time now) {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i].key != key) continue;
      if (now - slots_[i].at >= ttl_) {
        slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(i));
        return std::nullopt;
      }
      Slot s = slots_[i];
      slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(i));
      slots_.insert(slots_.begin(), s);
      return s.version;
    }
    return std::nullopt;
  }

  // Returns the evicted key, if any.
  std::optional<std::string> insert(const std::string& key, std::uint64_t version, Time now) {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i].key == key) {
        slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(i));
        slots_.insert(slots_.begin(), Slot{key, version, now});
        return std::nullopt;
      }
    }
    slots_.insert(slots_.begin(), Slot{key, version, now});
    if (slots_.size() > capacity_) {
      std::string victim = slots_.back().key;
      slots_.pop_back();
      return victim;
    }
    return std::nullopt;
  }

  std::vector<std::string> order() const {
    std::vector<std::string> out;
    for (const auto& s : slots_) out.push_back(s.key);
    return out;
  }

 private:
  struct Slot {
    std::string key;
    std::uint64_t version;
    Time at;
  };
  std::size_t capacity_;
  Time ttl_;
  std::vector<Slot> slots_;
};

// Mean interaction lag evaluated term by term: every gap T_i - T_{i-1} is
// divided by max(n - 1, 1) (n = number of gaps), summed, then normalised by
// the observation window now - T_0.
inline double mil_direct(const std::vector<Time>& times, Time now) {
  if (times.size() < 2) return 0.0;
  const double gaps = static_cast<double>(times.size() - 1);
  const double divisor = std::max(gaps - 1.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    sum += static_cast<double>(times[i] - times[i - 1]) / divisor;
  const double window = static_cast<double>(now - times.front());
  return window == 0.0 ? 0.0 : sum / window;
}

// One tracked contact: (kind index, time) events in time order.
struct Contact {
  std::string user;
  std::vector<std::pair<int, Time>> events;
};

// Top-n users by lookup count (kind 0), ties to the smaller user name.
// Repeated arg-max rather than sorting.
inline std::vector<std::string> trend_top(std::vector<Contact> contacts, std::size_t n) {
  auto count = [](const Contact& c) {
    return std::count_if(c.events.begin(), c.events.end(),
                         [](const auto& e) { return e.first == 0; });
  };
  std::vector<std::string> out;
  while (out.size() < n && !contacts.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < contacts.size(); ++i) {
      const auto ci = count(contacts[i]);
      const auto cb = count(contacts[best]);
      if (ci > cb || (ci == cb && contacts[i].user < contacts[best].user)) best = i;
    }
    out.push_back(contacts[best].user);
    contacts.erase(contacts.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

// Exact rational p / q with q > 0.
struct Rational {
  __int128 p = 0;
  __int128 q = 1;
};

inline bool less(const Rational& a, const Rational& b) { return a.p * b.q < b.p * a.q; }
inline bool equal(const Rational& a, const Rational& b) { return a.p * b.q == b.p * a.q; }

inline Rational add(const Rational& a, const Rational& b) {
  Rational r{a.p * b.q + b.p * a.q, a.q * b.q};
  __int128 x = r.p < 0 ? -r.p : r.p, y = r.q;
  while (y != 0) {
    const __int128 t = x % y;
    x = y;
    y = t;
  }
  if (x > 1) {
    r.p /= x;
    r.q /= x;
  }
  return r;
}

// Social score with integer weights and alpha = a_num / den,
// beta = b_num / den, evaluated exactly.
inline Rational social_score_exact(const std::vector<Contact>& all, const Contact& c,
                                   const std::vector<std::int64_t>& weights,
                                   std::int64_t a_num, std::int64_t b_num, std::int64_t den,
                                   Time now) {
  std::int64_t total = 0;
  for (const auto& other : all) total += static_cast<std::int64_t>(other.events.size());
  std::int64_t weighted = 0;
  for (const auto& e : c.events) weighted += weights[static_cast<std::size_t>(e.first)];
  Rational ts{0, 1};
  if (total > 0) ts = Rational{weighted, total};
  Rational lag{0, 1};
  if (c.events.size() >= 2 && now != c.events.front().second) {
    const std::int64_t gaps = static_cast<std::int64_t>(c.events.size()) - 1;
    const std::int64_t span = c.events.back().second - c.events.front().second;
    lag = Rational{span, static_cast<__int128>(std::max<std::int64_t>(gaps - 1, 1)) *
                             (now - c.events.front().second)};
  }
  return add(Rational{ts.p * a_num, ts.q * den}, Rational{lag.p * b_num, lag.q * den});
}

inline std::vector<std::string> social_top(const std::vector<Contact>& contacts,
                                           const std::vector<std::int64_t>& weights,
                                           std::int64_t a_num, std::int64_t b_num,
                                           std::int64_t den, Time now, std::size_t n) {
  std::vector<std::pair<Rational, std::string>> scored;
  for (const auto& c : contacts)
    scored.emplace_back(social_score_exact(contacts, c, weights, a_num, b_num, den, now), c.user);
  std::vector<std::string> out;
  while (out.size() < n && !scored.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scored.size(); ++i) {
      const auto& [si, ui] = scored[i];
      const auto& [sb, ub] = scored[best];
      if (less(sb, si) || (equal(si, sb) && ui < ub)) best = i;
    }
    out.push_back(scored[best].second);
    scored.erase(scored.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

// Hit ratio from raw counters: cache replies over all replies.
inline double hit_ratio(double cache, double total) { return cache / total; }

}  // namespace oracle
