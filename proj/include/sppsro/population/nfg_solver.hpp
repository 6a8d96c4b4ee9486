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

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <memory>
#include <utility>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/eval/evaluation.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/metasolvers/zero_sum_lp.hpp"
#include "sppsro/oracles/learners.hpp"
#include "sppsro/population/config.hpp"
#include "sppsro/population/population.hpp"

namespace sppsro {

/// Population algorithms on a matrix game. Best responses are smoothed
/// learners (the exact oracle is the lambda = 1 special case); every payoff
/// is an exact matrix product.
class NfgSolver {
 public:
  NfgSolver(std::shared_ptr<const NormalFormGame> game, SolverConfig config, std::uint64_t seed)
      : game_(std::move(game)), config_(std::move(config)), seed_(seed) {
    config_.validate(true);
    if (config_.oracle.kind == OracleKind::kExact) config_.oracle.lambda = 1.0;
    for (int p = 0; p < 2; ++p) append(p, PureStrategy{0}, Provenance::kInitial);
    double lo = game_->data().front(), hi = lo;
    for (double x : game_->data()) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi == lo) hi = lo + 1.0;
    range_ = {std::pair{lo, hi}, std::pair{-hi, -lo}};
  }

  const NormalFormGame& game() const { return *game_; }
  const Population& population() const { return population_; }
  const SolverConfig& config() const { return config_; }
  int iterations_done() const { return iteration_; }

  /// Mixed strategy induced by population member k of `player`.
  const std::vector<double>& member_mixed(int player, std::size_t k) const {
    return mixed_[static_cast<std::size_t>(player)].at(k);
  }

  /// Report for the initial population (all mass on the single member).
  IterationOutcome initial_outcome() const {
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) out.distribution[static_cast<std::size_t>(p)] = uniform_vector(population_.size(p));
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  /// One population iteration of `algorithm`.
  IterationOutcome step(Algorithm algorithm) {
    ++iteration_;
    switch (algorithm) {
      case Algorithm::kPsro: return psro_iteration();
      case Algorithm::kApsro: return apsro_iteration();
      case Algorithm::kSpPsro: return sp_psro_iteration(false);
      case Algorithm::kSpPsroLastIterate: return sp_psro_iteration(true);
      case Algorithm::kSpPsroNotAnytime: return not_anytime_iteration();
    }
    throw ParameterError("unknown algorithm");
  }

  double exploitability_of(const std::array<std::vector<double>, 2>& dist) const {
    return eval::exploitability(*game_, mix(0, dist[0]), mix(1, dist[1]));
  }

 private:
  struct LoopResult {
    std::vector<double> beta;                      // opponent best response
    std::vector<double> nu;                        // final new strategy
    std::vector<std::vector<double>> checkpoints;  // new-strategy checkpoints
    std::vector<double> pi_average;                // time-averaged restricted distribution
    std::int64_t steps = 0;
  };

  std::int64_t steps_per_loop() const {
    return static_cast<std::int64_t>(config_.schedule.n) * config_.schedule.m;
  }

  void append(int player, PopulationStrategy s, Provenance tag) {
    mixed_[static_cast<std::size_t>(player)].push_back(to_mixed(s, game_->num_strategies(player)));
    population_.append(player, std::move(s), tag);
  }

  std::vector<double> mix(int player, std::span<const double> dist) const {
    const auto& members = mixed_[static_cast<std::size_t>(player)];
    if (dist.size() != members.size()) throw ShapeError("restricted distribution does not match population");
    std::vector<double> out(game_->num_strategies(player), 0.0);
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (dist[k] == 0.0) continue;
      for (std::size_t a = 0; a < out.size(); ++a) out[a] += dist[k] * members[k][a];
    }
    return out;
  }

  NashSolution restricted_ne(const NormalFormGame& empirical) const {
    if (config_.metasolver.kind == MetasolverKind::kFictitiousPlay) {
      auto [x, y] = fictitious_play(empirical, config_.metasolver.fp_iterations);
      return {std::move(x), std::move(y), 0.0};
    }
    return exact_nash_zero_sum(empirical);
  }

  NashSolution current_ne() const {
    return restricted_ne(eval::empirical_matrix(*game_, population_.strategies(0), population_.strategies(1)));
  }

  // Runs both players' loops; results indexed by the population-side player.
  template <class Loop>
  std::array<LoopResult, 2> for_both_players(Loop&& loop) {
    if (config_.parallel_players) {
      auto f0 = std::async(std::launch::async, [&] { return loop(0); });
      auto r1 = loop(1);
      return {f0.get(), std::move(r1)};
    }
    auto r0 = loop(0);
    auto r1 = loop(1);
    return {std::move(r0), std::move(r1)};
  }

  SmoothedLearner learner(int player) const {
    return SmoothedLearner::uniform(game_->num_strategies(player), config_.oracle.lambda);
  }

  // Opponent of `player` trains toward BR(target) for n*m steps; a new
  // strategy for `player` optionally trains against it.
  LoopResult fixed_target_loop(int player, const std::vector<double>& target, bool with_nu) const {
    const int opp = opponent_of(player);
    LoopResult r;
    auto beta = learner(opp);
    auto nu = learner(player);
    std::int64_t nu_updates = 0;
    for (std::int64_t s = 0; s < steps_per_loop(); ++s) {
      smoothed_br_step_inplace(beta, *game_, target, opp);
      if (with_nu) {
        smoothed_br_step_inplace(nu, *game_, beta.current, player);
        if (++nu_updates % config_.schedule.checkpoint_every == 0) r.checkpoints.push_back(nu.current);
      }
    }
    r.beta = std::move(beta.current);
    r.nu = std::move(nu.current);
    r.steps = steps_per_loop();
    return r;
  }

  // The APSRO / SP-PSRO inner loop for the population side `player`.
  LoopResult no_regret_loop(int player, bool with_nu) const {
    const int opp = opponent_of(player);
    const auto& members = mixed_[static_cast<std::size_t>(player)];
    const std::size_t k_old = members.size();
    const std::size_t width = game_->num_strategies(player);
    RegretLearner pi(config_.metasolver, k_old + (with_nu ? 1 : 0), range_[static_cast<std::size_t>(player)]);
    Rng rng = make_rng(seed_, 2 * static_cast<std::uint64_t>(iteration_) + static_cast<std::uint64_t>(player));
    auto beta = learner(opp);
    auto nu = learner(player);
    LoopResult r;
    std::int64_t nu_updates = 0;
    std::vector<double> base(width), target(width), payoffs(pi.arms());
    for (int outer = 0; outer < config_.schedule.n; ++outer) {
      const auto dist = pi.distribution();
      std::fill(base.begin(), base.end(), 0.0);
      for (std::size_t k = 0; k < k_old; ++k) {
        for (std::size_t a = 0; a < width; ++a) base[a] += dist[k] * members[k][a];
      }
      for (int inner = 0; inner < config_.schedule.m; ++inner) {
        if (with_nu) {
          for (std::size_t a = 0; a < width; ++a) target[a] = base[a] + dist[k_old] * nu.current[a];
          smoothed_br_step_inplace(beta, *game_, target, opp);
          smoothed_br_step_inplace(nu, *game_, beta.current, player);
          if (++nu_updates % config_.schedule.checkpoint_every == 0) r.checkpoints.push_back(nu.current);
        } else {
          smoothed_br_step_inplace(beta, *game_, base, opp);
        }
      }
      const auto values = game_->pure_values(player, beta.current);
      for (std::size_t k = 0; k < k_old; ++k) payoffs[k] = dot(members[k], values);
      if (with_nu) payoffs[k_old] = dot(nu.current, values);
      pi.update(payoffs, rng);
    }
    r.beta = std::move(beta.current);
    r.nu = std::move(nu.current);
    r.pi_average = pi.time_average();
    r.steps = steps_per_loop();
    return r;
  }

  static PopulationStrategy pure_of(const std::vector<double>& mixed) { return PureStrategy{argmax(mixed)}; }

  PopulationStrategy time_average(const LoopResult& r) const {
    if (r.checkpoints.empty()) return MixedStrategy(r.nu);
    std::vector<PopulationStrategy> parts;
    parts.reserve(r.checkpoints.size());
    for (const auto& c : r.checkpoints) parts.emplace_back(MixedStrategy(c));
    return PopulationStrategy::uniform_mixture(parts);
  }

  IterationOutcome psro_iteration() {
    const auto ne = current_ne();
    const std::array<const std::vector<double>*, 2> target_dist{&ne.row.probs(), &ne.col.probs()};
    auto loops = for_both_players([&](int p) {
      return fixed_target_loop(p, mix(p, *target_dist[static_cast<std::size_t>(p)]), false);
    });
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) {
      const std::size_t k_old = population_.size(p);
      append(p, pure_of(loops[static_cast<std::size_t>(opponent_of(p))].beta), Provenance::kBeta);
      out.distribution[static_cast<std::size_t>(p)] = pad_distribution(*target_dist[static_cast<std::size_t>(p)], k_old, false);
      out.episodes += loops[static_cast<std::size_t>(p)].steps;
    }
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  IterationOutcome apsro_iteration() {
    auto loops = for_both_players([&](int p) { return no_regret_loop(p, false); });
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) {
      const std::size_t k_old = population_.size(p);
      append(p, pure_of(loops[static_cast<std::size_t>(opponent_of(p))].beta), Provenance::kBeta);
      out.distribution[static_cast<std::size_t>(p)] = pad_distribution(loops[static_cast<std::size_t>(p)].pi_average, k_old, false);
      out.episodes += loops[static_cast<std::size_t>(p)].steps;
    }
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  IterationOutcome sp_psro_iteration(bool last_iterate) {
    auto loops = for_both_players([&](int p) { return no_regret_loop(p, true); });
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) {
      const auto& own = loops[static_cast<std::size_t>(p)];
      const std::size_t k_old = population_.size(p);
      append(p, pure_of(loops[static_cast<std::size_t>(opponent_of(p))].beta), Provenance::kBeta);
      if (last_iterate) {
        append(p, MixedStrategy(own.nu), Provenance::kNuLast);
      } else {
        append(p, time_average(own), Provenance::kNuBar);
      }
      out.distribution[static_cast<std::size_t>(p)] = pad_distribution(own.pi_average, k_old, true);
      out.episodes += own.steps;
    }
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  IterationOutcome not_anytime_iteration() {
    const auto ne = current_ne();
    const std::array<const std::vector<double>*, 2> target_dist{&ne.row.probs(), &ne.col.probs()};
    auto loops = for_both_players([&](int p) {
      return fixed_target_loop(p, mix(p, *target_dist[static_cast<std::size_t>(p)]), true);
    });
    // Report the restricted NE over the old population plus the new average.
    std::array<std::vector<PopulationStrategy>, 2> extended;
    std::array<std::size_t, 2> k_old{population_.size(0), population_.size(1)};
    std::array<PopulationStrategy, 2> averages{time_average(loops[0]), time_average(loops[1])};
    for (int p = 0; p < 2; ++p) {
      auto members = population_.strategies(p);
      extended[static_cast<std::size_t>(p)].assign(members.begin(), members.end());
      extended[static_cast<std::size_t>(p)].push_back(averages[static_cast<std::size_t>(p)]);
    }
    const auto report = restricted_ne(eval::empirical_matrix(*game_, extended[0], extended[1]));
    const std::array<const std::vector<double>*, 2> report_dist{&report.row.probs(), &report.col.probs()};
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) {
      append(p, pure_of(loops[static_cast<std::size_t>(opponent_of(p))].beta), Provenance::kBeta);
      append(p, averages[static_cast<std::size_t>(p)], Provenance::kNuBar);
      out.distribution[static_cast<std::size_t>(p)] =
          pad_distribution(*report_dist[static_cast<std::size_t>(p)], k_old[static_cast<std::size_t>(p)], true);
      out.episodes += loops[static_cast<std::size_t>(p)].steps;
    }
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  std::shared_ptr<const NormalFormGame> game_;
  SolverConfig config_;
  std::uint64_t seed_;
  Population population_;
  std::array<std::vector<std::vector<double>>, 2> mixed_;
  std::array<std::pair<double, double>, 2> range_;
  int iteration_ = 0;
};

}  // namespace sppsro
