// Copyright 2026 The sppsro Authors.
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


// sppsro command-line driver.
//
//   sppsro run --preset fig3a-big-rps-50 [--seed 4] [--iterations 20] [--output out.csv]
//   sppsro run --config experiment.ini
//   sppsro exploitability --game kuhn_poker p0.json p1.json
//   sppsro gen-game --game blotto:5,3 --output blotto.txt
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sppsro/harness/config.hpp"
#include "sppsro/harness/policy_io.hpp"
#include "sppsro/harness/presets.hpp"
#include "sppsro/harness/runner.hpp"
#include "sppsro/sppsro.hpp"

namespace {

using namespace sppsro;

constexpr int kRuntimeError = 1;
constexpr int kInputError = 2;

struct RunArgs {
  std::string config;
  std::string preset;
  std::vector<std::uint64_t> seeds;
  std::optional<int> iterations;
  std::string output;
  std::optional<int> threads;
  bool print_config = false;
  bool quiet = false;
};

int cmd_run(const RunArgs& a) {
  harness::ExperimentConfig cfg;
  try {
    cfg = a.preset.empty() ? harness::load_config(a.config) : harness::preset_config(a.preset);
  } catch (const harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (!a.seeds.empty()) cfg.seeds = a.seeds;
  if (a.iterations) cfg.iterations = *a.iterations;
  if (!a.output.empty()) cfg.output = a.output;
  if (a.threads) cfg.threads = *a.threads;
  if (a.print_config) {
    std::cout << harness::to_config_text(cfg);
    return 0;
  }
  try {
    auto progress = [&](const IterationRecord& r) {
      if (a.quiet) return;
      std::fprintf(stderr, "[%s seed %llu] iteration %d  exploitability %.6f  (%lld ms)\n", r.algorithm.c_str(),
                   static_cast<unsigned long long>(r.seed), r.iteration, r.exploitability,
                   static_cast<long long>(r.wall_ms));
    };
    const auto records = harness::run_experiment(cfg, progress);
    if (cfg.output == "-") {
      harness::write_experiment_csv(std::cout, cfg, records);
    } else {
      harness::write_experiment_csv(cfg.output, cfg, records);
      if (!a.quiet) std::fprintf(stderr, "wrote %zu rows to %s\n", records.size(), cfg.output.c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}

int cmd_exploitability(const std::string& game_text, std::uint64_t seed, const std::vector<std::string>& files) {
  zoo::LoadedGame game;
  try {
    game = zoo::make_game(zoo::GameSpec::parse(game_text), seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    double e = 0.0;
    if (game.is_normal_form()) {
      const auto x = harness::load_mixed_policy(files[0], game.nfg->rows());
      const auto y = harness::load_mixed_policy(files[1], game.nfg->cols());
      e = eval::exploitability(*game.nfg, x, y);
    } else {
      const auto p0 = harness::load_tree_policy(files[0], *game.tree, 0);
      const auto p1 = harness::load_tree_policy(files[1], *game.tree, 1);
      e = eval::exploitability(p0, p1);
    }
    std::printf("%.6f\n", e);
  } catch (const harness::PolicyFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}

int cmd_gen_game(const std::string& game_text, std::uint64_t seed, const std::string& output) {
  zoo::LoadedGame game;
  try {
    game = zoo::make_game(zoo::GameSpec::parse(game_text), seed);
    if (!game.is_normal_form()) throw ParameterError("'" + game_text + "' is not a normal-form game");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    if (output.empty() || output == "-") {
      write_nfg(std::cout, *game.nfg);
    } else {
      save_nfg(output, *game.nfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population-based solvers for two-player zero-sum games"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run an experiment and write a CSV of per-iteration exploitability");
  auto* config_opt = run->add_option("--config", run_args.config, "Experiment configuration file")->check(CLI::ExistingFile);
  auto* preset_opt = run->add_option("--preset", run_args.preset, "Named preset (see list-presets)");
  config_opt->excludes(preset_opt);
  run->add_option("--seed", run_args.seeds, "Seed(s), overriding the configuration");
  run->add_option("--iterations", run_args.iterations, "Population iterations per seed")->check(CLI::NonNegativeNumber);
  run->add_option("--output", run_args.output, "CSV path ('-' for stdout)");
  run->add_option("--threads", run_args.threads, "Worker threads for the seed fan-out")->check(CLI::PositiveNumber);
  run->add_flag("--print-config", run_args.print_config, "Print the resolved configuration and exit");
  run->add_flag("-q,--quiet", run_args.quiet, "No progress output");

  std::string exp_game;
  std::uint64_t exp_seed = 0;
  std::vector<std::string> policy_files;
  auto* exp = app.add_subcommand("exploitability", "Exact exploitability of a policy pair");
  exp->add_option("--game", exp_game, "Game spec, e.g. kuhn_poker or generalized_rps:3")->required();
  exp->add_option("--seed", exp_seed, "Seed for randomly generated games");
  exp->add_option("policies", policy_files, "Player 0 and player 1 policy files (JSON)")->expected(2)->required();

  std::string gen_game;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen-game", "Write a normal-form game as a payoff matrix file");
  gen->add_option("--game", gen_game, "Game spec")->required();
  gen->add_option("--seed", gen_seed, "Seed for randomly generated games");
  gen->add_option("--output", gen_output, "Output path (default stdout)");

  auto* list = app.add_subcommand("list-presets", "List the shipped presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (*run) {
    if (run_args.config.empty() && run_args.preset.empty()) {
      std::cerr << "error: run needs --config or --preset\n";
      return kInputError;
    }
    return cmd_run(run_args);
  }
  if (*exp) return cmd_exploitability(exp_game, exp_seed, policy_files);
  if (*gen) return cmd_gen_game(gen_game, gen_seed, gen_output);
  if (*list) {
    for (const auto& p : harness::presets()) std::cout << p.name << "  " << p.description << "\n";
  }
  return 0;
}
