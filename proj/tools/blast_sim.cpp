// Copyright 2026 The blast-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// blast-sim: run spectrum-market scenarios and audit their artifacts.
//
//   blast-sim run --scenario scenario1 --mechanism sp --ticks 100 --seed 7 --out runs/sp
//   blast-sim run --scenario my.json --mechanism ds,fp,sp --seeds 20 --out runs/cmp
//   blast-sim verify-privacy --run runs/sp

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spectrum/error.hpp"
#include "spectrum/privacy.hpp"
#include "spectrum/reports.hpp"
#include "spectrum/scenario.hpp"
#include "spectrum/simulator.hpp"

namespace fs = std::filesystem;
using namespace spectrum;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct RunArgs {
  std::string scenario;
  std::string mechanisms;
  std::optional<std::int64_t> ticks;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t seeds = 1;
  std::string brain_endpoint;
  std::string strategy;
  bool parallel = false;
};

std::vector<Mechanism> parse_mechanisms(const std::string& list, Mechanism fallback) {
  if (list.empty()) return {fallback};
  std::vector<Mechanism> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto m = parse_mechanism(item);
    if (!m) throw MarketError(ErrorCode::ValidationError, "--mechanism: unknown mechanism '" + item + "'");
    out.push_back(*m);
  }
  if (out.empty()) throw MarketError(ErrorCode::ValidationError, "--mechanism: empty list");
  return out;
}

int run_command(const RunArgs& args) {
  sim::ScenarioConfig base = sim::load_scenario(args.scenario);
  if (args.ticks) base.num_ticks = *args.ticks;
  if (!args.brain_endpoint.empty()) base.brain_endpoint = args.brain_endpoint;
  if (!args.strategy.empty()) {
    const auto s = agents::parse_strategy(args.strategy);
    if (!s) throw MarketError(ErrorCode::ValidationError, "--strategy: expected heuristic or pipeline");
    base.strategy = *s;
    for (auto& a : base.agents) a.strategy.reset();
  }
  if (args.seeds == 0) throw MarketError(ErrorCode::ValidationError, "--seeds: must be at least 1");
  const std::uint64_t first_seed = args.seed.value_or(base.seed);
  const auto mechanisms = parse_mechanisms(args.mechanisms, base.mechanism);
  sim::validate(base);

  sim::RunOptions options;
  options.parallel_planning = args.parallel || !base.brain_endpoint.empty();

  const bool single = mechanisms.size() == 1 && args.seeds == 1;
  const fs::path out(args.out);
  std::vector<sim::Summary> summaries;
  for (Mechanism m : mechanisms) {
    for (std::size_t k = 0; k < args.seeds; ++k) {
      sim::ScenarioConfig config = base;
      config.mechanism = m;
      const std::uint64_t seed = first_seed + k;
      const auto artifacts = sim::run(config, seed, options);
      const fs::path dir =
          single ? out : out / std::string(short_name(m)) / ("seed-" + std::to_string(seed));
      sim::emit_reports(artifacts, dir);
      summaries.push_back(artifacts.summary);
      std::cout << sim::summary_row(artifacts.summary) << "\n";
      if (!artifacts.privacy_report.clean()) {
        std::cerr << "privacy findings in " << dir << "\n";
      }
      for (const auto& v : artifacts.invariant_violations) std::cerr << "invariant: " << v << "\n";
    }
  }
  if (!single) sim::emit_batch_summary(summaries, out);
  return 0;
}

int verify_command(const std::string& run_dir) {
  std::vector<fs::path> dirs;
  if (fs::exists(fs::path(run_dir) / "privacy_snapshots.jsonl")) {
    dirs.push_back(run_dir);
  } else if (fs::is_directory(run_dir)) {
    for (const auto& entry : fs::recursive_directory_iterator(run_dir)) {
      if (entry.path().filename() == "privacy_snapshots.jsonl") dirs.push_back(entry.path().parent_path());
    }
    std::sort(dirs.begin(), dirs.end());
  }
  if (dirs.empty()) {
    throw MarketError(ErrorCode::ValidationError, "--run: no privacy snapshots under " + run_dir);
  }
  bool clean = true;
  for (const auto& dir : dirs) {
    const auto report = privacy::verify_privacy_dir(dir);
    auto doc = privacy::to_json(report);
    doc["run"] = dir.string();
    std::cout << doc.dump() << "\n";
    clean = clean && report.clean();
  }
  return clean ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum marketplace simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  run->add_option("--scenario", run_args.scenario, "Preset name (scenario1, scenario2) or JSON path")->required();
  run->add_option("--mechanism", run_args.mechanisms, "ds, fp or sp; a comma list runs each");
  run->add_option("--ticks", run_args.ticks, "Trading ticks");
  run->add_option("--seed", run_args.seed, "Seed (first seed in batch mode)");
  run->add_option("--out", run_args.out, "Output directory")->required();
  run->add_option("--seeds", run_args.seeds, "Number of consecutive seeds to run");
  run->add_option("--brain-endpoint", run_args.brain_endpoint, "External planner URL");
  run->add_option("--strategy", run_args.strategy, "Override every agent: heuristic or pipeline");
  run->add_flag("--parallel", run_args.parallel, "Plan on worker threads");

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify-privacy", "Scan a run's commit-phase snapshots for plaintext bids");
  verify->add_option("--run", verify_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (run->parsed()) return run_command(run_args);
    return verify_command(verify_dir);
  } catch (const MarketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ValidationError:
      case ErrorCode::ParseError:
      case ErrorCode::InvalidInput:
        return kExitInvalid;
      default:
        return kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
