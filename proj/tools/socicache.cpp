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
#include <iostream>

#include <CLI11.hpp>

#include "socicache/commands.hpp"

int main(int argc, char** argv) {
  using namespace socicache;
  CLI::App app{"socicache: social caching simulator for DHT-based social networks"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config, out, trace;
  std::uint64_t seed = 0;
  bool serial = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "Scenario config file (key = value)");
    cmd->add_option("--seed", seed, "Master seed (overrides the config)");
    cmd->add_option("--out", out, "Output directory (default: $SOCICACHE_OUT or ./results)");
    cmd->add_option("--set", opts.sets, "Override a config key: KEY=VALUE")->take_all();
    cmd->add_option("--trace", trace, "Replay a trace file instead of generating one");
    cmd->add_flag("--serial", serial, "Run comparison variants one after another");
  };

  auto* run = app.add_subcommand("run", "Run one scenario");
  auto* strategies = app.add_subcommand("compare-strategies",
                                        "Random vs Trend vs SocialScore, social cache only");
  auto* caches = app.add_subcommand("compare-caches",
                                    "None vs CurrentOnly vs SocialOnly vs Both");
  auto* gen = app.add_subcommand("gen-trace", "Write the generated workload trace");
  for (auto* c : {run, strategies, caches, gen}) add_common(c);
  gen->get_option("--out")->description("Trace file to write (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  auto* active = app.get_subcommands().front();
  if (!config.empty()) opts.config = config;
  if (!out.empty()) opts.out = out;
  if (!trace.empty()) opts.trace = trace;
  if (active->count("--seed")) opts.seed = seed;
  if (serial) opts.exec = Execution::Serial;

  if (active == run) return cmd_run(opts, std::cout, std::cerr);
  if (active == strategies) return cmd_compare_strategies(opts, std::cout, std::cerr);
  if (active == caches) return cmd_compare_caches(opts, std::cout, std::cerr);
  return cmd_gen_trace(opts, std::cout, std::cerr);
}
