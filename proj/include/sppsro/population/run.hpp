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

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sppsro/population/config.hpp"
#include "sppsro/population/efg_solver.hpp"
#include "sppsro/population/nfg_solver.hpp"
#include "sppsro/population/population.hpp"
#include "sppsro/zoo/game_spec.hpp"

namespace sppsro {

/// Either solver behind one interface.
class Solver {
 public:
  Solver(const zoo::LoadedGame& game, const SolverConfig& config, std::uint64_t seed)
      : impl_(make(game, config, seed)) {}

  bool is_normal_form() const { return std::holds_alternative<NfgSolver>(impl_); }
  const Population& population() const {
    return std::visit([](const auto& s) -> const Population& { return s.population(); }, impl_);
  }
  IterationOutcome initial_outcome() const {
    return std::visit([](const auto& s) { return s.initial_outcome(); }, impl_);
  }
  IterationOutcome step(Algorithm a) {
    return std::visit([a](auto& s) { return s.step(a); }, impl_);
  }
  const NfgSolver& nfg() const { return std::get<NfgSolver>(impl_); }
  const EfgSolver& efg() const { return std::get<EfgSolver>(impl_); }

 private:
  static std::variant<NfgSolver, EfgSolver> make(const zoo::LoadedGame& game, const SolverConfig& config,
                                                 std::uint64_t seed) {
    if (game.is_normal_form()) return NfgSolver(game.nfg, config, seed);
    return EfgSolver(game.tree, config, seed);
  }
  std::variant<NfgSolver, EfgSolver> impl_;
};

/// Algorithm used at 1-based iteration `t`: the configured one, or APSRO once
/// the optional switch point has passed.
inline Algorithm algorithm_at(const SolverConfig& config, int t) {
  const auto& sw = config.schedule.switch_to_apsro_after;
  if (sw && t > *sw) return Algorithm::kApsro;
  return config.algorithm;
}

/// Observer invoked after every record (progress reporting).
using RecordCallback = std::function<void(const IterationRecord&)>;

/// Runs `iterations` population iterations for one seed. Emits one record per
/// iteration (1-based); with zero iterations, a single iteration-0 record of
/// the initial population. Deterministic given the seed.
inline std::vector<IterationRecord> run(const zoo::GameSpec& spec, const SolverConfig& config,
                                        std::uint64_t seed, int iterations,
                                        const RecordCallback& on_record = {}) {
  if (iterations < 0) throw ParameterError("iterations must be >= 0");
  const auto game = zoo::make_game(spec, seed);
  config.validate(game.is_normal_form());
  Solver solver(game, config, seed);
  std::vector<IterationRecord> out;
  auto record = [&](int t, const IterationOutcome& o, std::int64_t cumulative, std::int64_t ms) {
    IterationRecord r;
    r.algorithm = std::string(to_string(config.algorithm));
    r.game = game.name;
    r.seed = seed;
    r.iteration = t;
    r.cumulative_episodes = cumulative;
    r.population_size = {solver.population().size(0), solver.population().size(1)};
    r.exploitability = o.exploitability;
    r.wall_ms = ms;
    out.push_back(r);
    if (on_record) on_record(r);
  };
  if (iterations == 0) {
    record(0, solver.initial_outcome(), 0, 0);
    return out;
  }
  std::int64_t cumulative = 0;
  for (int t = 1; t <= iterations; ++t) {
    const auto start = std::chrono::steady_clock::now();
    IterationOutcome o;
    try {
      o = solver.step(algorithm_at(config, t));
    } catch (const std::exception& e) {
      throw std::runtime_error("iteration " + std::to_string(t) + " (seed " + std::to_string(seed) + "): " + e.what());
    }
    cumulative += o.episodes;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    record(t, o, cumulative, ms.count());
  }
  return out;
}

/// One run per seed, concatenated in seed order.
inline std::vector<IterationRecord> run(const zoo::GameSpec& spec, const SolverConfig& config,
                                        const std::vector<std::uint64_t>& seeds, int iterations) {
  std::vector<IterationRecord> out;
  for (auto s : seeds) {
    auto r = run(spec, config, s, iterations);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace sppsro
