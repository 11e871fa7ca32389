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
#include "socicache/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "socicache/config.hpp"

namespace socicache {

namespace fs = std::filesystem;

namespace {

ResolvedConfig resolve(const CommandOptions& opts) {
  return resolve_config(opts.config, opts.sets, opts.seed);
}

std::vector<TraceEvent> shared_trace(const CommandOptions& opts, const ScenarioConfig& cfg) {
  if (opts.trace) return load_trace(*opts.trace);
  return generate_trace(cfg);
}

std::string manifest(const CommandOptions& opts, const ScenarioConfig& cfg,
                     const fs::path& dir) {
  std::ostringstream m;
  m << "# run manifest\n"
    << "# run_id = " << run_id(cfg) << '\n'
    << "# config_path = " << (opts.config ? opts.config->string() : "(defaults)") << '\n'
    << "# trace_path = " << (opts.trace ? opts.trace->string() : "(generated)") << '\n'
    << "# output_dir = " << dir.string() << '\n'
    << render_config(cfg);
  return m.str();
}

void write_run(const fs::path& dir, const RunResult& r) {
  fs::create_directories(dir);
  export_csv(r.ledger, dir / "metrics.csv");
  write_text_file(dir / "summary.csv", summary_csv({r.summary}));
}

// Prints a CSV text as right-aligned columns.
void print_table(std::ostream& out, const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << r[i];
    out << '\n';
  }
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::ConfigError ? kExitConfigError : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::vector<RunResult> run_variants(const CommandOptions& opts, const ScenarioConfig& base,
                                    std::vector<RunSpec> specs, const fs::path& dir) {
  const auto trace = shared_trace(opts, base);
  auto results = run_batch(specs, opts.exec, &trace);
  for (const auto& r : results) write_run(dir / r.summary.label, r);
  return results;
}

std::vector<RunSummary> summaries(const std::vector<RunResult>& results) {
  std::vector<RunSummary> out;
  for (const auto& r : results) out.push_back(r.summary);
  return out;
}

}  // namespace

fs::path output_dir(const CommandOptions& opts) {
  if (opts.out) return *opts.out;
  if (const char* env = std::getenv("SOCICACHE_OUT"); env && *env) return env;
  return "results";
}

std::string strategies_csv(const std::vector<RunSummary>& runs) {
  std::ostringstream out;
  out << "strategy,cache_replies,overlay_replies,total,unanswered,hit_ratio,"
         "social_cache_items,max_channels,max_muc_size,trace_hash\n";
  for (const auto& r : runs) {
    out << r.strategy << ',' << r.counters.cache_replies() << ','
        << r.counters.overlay_replies << ',' << r.counters.answered() << ','
        << r.counters.unanswered << ',' << format_optional(r.hit_ratio(), 4) << ','
        << r.social_cache_items << ',' << r.max_channels << ',' << r.max_muc_size << ','
        << r.trace_hash << '\n';
  }
  return out.str();
}

std::string caches_csv(const std::vector<RunSummary>& runs) {
  std::ostringstream out;
  out << "cache_setup,current_replies,social_replies,overlay_replies,total,unanswered,"
         "hit_ratio,items,responses_per_item,trace_hash\n";
  for (const auto& r : runs) {
    out << r.cache_setup << ',' << r.counters.current_hits << ','
        << r.counters.social_hits << ',' << r.counters.overlay_replies << ','
        << r.counters.answered() << ',' << r.counters.unanswered << ','
        << format_optional(r.hit_ratio(), 4) << ','
        << (r.social_cache_items + r.current_cache_items) << ','
        << format_optional(r.per_item(), 4) << ',' << r.trace_hash << '\n';
  }
  return out.str();
}

int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = resolve(opts).scenario;
    const fs::path dir = output_dir(opts);
    RunResult r;
    if (opts.trace) {
      const auto trace = load_trace(*opts.trace);
      r = run_scenario(cfg, "run", &trace);
    } else {
      r = run_scenario(cfg, "run");
    }
    write_run(dir, r);
    write_text_file(dir / "manifest.txt", manifest(opts, cfg, dir));
    print_table(out, summary_csv({r.summary}));
    return kExitOk;
  });
}

int cmd_compare_strategies(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto base = resolve(opts).scenario;
    base.cache_setup = CacheSetup::SocialOnly;
    std::vector<RunSpec> specs;
    for (auto kind : {StrategyKind::Random, StrategyKind::Trend, StrategyKind::SocialScore}) {
      ScenarioConfig c = base;
      c.strategy.kind = kind;
      specs.push_back({std::string(to_string(kind)), c});
    }
    const fs::path dir = output_dir(opts);
    const auto results = run_variants(opts, base, std::move(specs), dir);
    const std::string table = strategies_csv(summaries(results));
    write_text_file(dir / "strategies.csv", table);
    write_text_file(dir / "manifest.txt", manifest(opts, base, dir));
    print_table(out, table);
    return kExitOk;
  });
}

int cmd_compare_caches(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto resolved = resolve(opts);
    auto base = resolved.scenario;
    base.strategy.kind = StrategyKind::SocialScore;
    if (!resolved.explicit_keys.contains("sim_duration")) base.sim_duration = 48 * kTicksPerHour;
    base.validate();
    std::vector<RunSpec> specs;
    for (auto setup : {CacheSetup::None, CacheSetup::CurrentOnly, CacheSetup::SocialOnly,
                       CacheSetup::Both}) {
      ScenarioConfig c = base;
      c.cache_setup = setup;
      specs.push_back({std::string(to_string(setup)), c});
    }
    const fs::path dir = output_dir(opts);
    const auto results = run_variants(opts, base, std::move(specs), dir);
    const std::string table = caches_csv(summaries(results));
    write_text_file(dir / "caches.csv", table);
    write_text_file(dir / "manifest.txt", manifest(opts, base, dir));
    print_table(out, table);
    return kExitOk;
  });
}

int cmd_gen_trace(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = resolve(opts).scenario;
    TraceGenerator gen(cfg);
    if (opts.out) {
      std::ofstream file(*opts.out);
      if (!file) throw Error(Errc::IoError, "cannot write " + opts.out->string());
      write_trace(file, gen);
    } else {
      write_trace(out, gen);
    }
    return kExitOk;
  });
}

}  // namespace socicache
