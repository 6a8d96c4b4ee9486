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

#include <array>
#include <cstdint>
#include <deque>
#include <future>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/eval/evaluation.hpp"
#include "sppsro/eval/rollout.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/metasolvers/zero_sum_lp.hpp"
#include "sppsro/oracles/exact_best_response.hpp"
#include "sppsro/oracles/learners.hpp"
#include "sppsro/population/config.hpp"
#include "sppsro/population/population.hpp"

namespace sppsro {

/// Population algorithms on an extensive-form game. Best responses are
/// tabular Q-learners (or exact traversal BRs); all payoffs fed to the
/// metasolvers and all reported exploitabilities are exact traversals.
class EfgSolver {
 public:
  EfgSolver(std::shared_ptr<const GameTree> tree, SolverConfig config, std::uint64_t seed)
      : tree_(std::move(tree)), config_(std::move(config)), seed_(seed), weights_(eval::terminal_weights(*tree_)) {
    config_.validate(false);
    for (int p = 0; p < 2; ++p) append(p, TreePolicy::first_action(*tree_, p), Provenance::kInitial);
    const auto [lo, hi] = tree_->payoff_range();
    range_ = {std::pair{lo, hi}, std::pair{-hi, -lo}};
  }

  const GameTree& tree() const { return *tree_; }
  const Population& population() const { return population_; }
  const SolverConfig& config() const { return config_; }
  int iterations_done() const { return iteration_; }
  const TreePolicy& member_policy(int player, std::size_t k) const {
    return members_[static_cast<std::size_t>(player)].at(k).policy;
  }

  IterationOutcome initial_outcome() const {
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) out.distribution[static_cast<std::size_t>(p)] = uniform_vector(population_.size(p));
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  IterationOutcome step(Algorithm algorithm) {
    ++iteration_;
    switch (algorithm) {
      case Algorithm::kPsro: return fixed_target_iteration(false);
      case Algorithm::kApsro: return no_regret_iteration(false, false);
      case Algorithm::kSpPsro: return no_regret_iteration(true, false);
      case Algorithm::kSpPsroLastIterate: return no_regret_iteration(true, true);
      case Algorithm::kSpPsroNotAnytime: return fixed_target_iteration(true);
    }
    throw ParameterError("unknown algorithm");
  }

  std::vector<double> mixture_reach(int player, std::span<const double> dist) const {
    const auto& members = members_[static_cast<std::size_t>(player)];
    if (dist.size() != members.size()) throw ShapeError("restricted distribution does not match population");
    std::vector<double> out(tree_->num_terminals(), 0.0);
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (dist[k] == 0.0) continue;
      for (std::size_t z = 0; z < out.size(); ++z) out[z] += dist[k] * members[k].reach[z];
    }
    return out;
  }

  double exploitability_of(const std::array<std::vector<double>, 2>& dist) const {
    return eval::exploitability(*tree_, mixture_reach(0, dist[0]), mixture_reach(1, dist[1]));
  }

 private:
  struct Member {
    TreePolicy policy;
    std::vector<double> reach;     // own terminal realization weights
    std::vector<double> weighted;  // reach * chance * own payoff, per terminal
  };

  struct LoopResult {
    std::optional<TreePolicy> beta;
    std::optional<TreePolicy> nu_last;
    std::optional<TreePolicy> nu_average;
    std::vector<double> pi_average;
    std::int64_t episodes = 0;
  };

  Member make_member(int player, const TreePolicy& policy) const {
    Member m{policy, terminal_reach(policy), {}};
    m.weighted.resize(m.reach.size());
    const double sign = player == 0 ? 1.0 : -1.0;
    for (std::size_t z = 0; z < m.reach.size(); ++z) m.weighted[z] = sign * weights_[z] * m.reach[z];
    return m;
  }

  void append(int player, const TreePolicy& policy, Provenance tag) {
    members_[static_cast<std::size_t>(player)].push_back(make_member(player, policy));
    population_.append(player, policy.to_behavior(), tag);
  }

  // v_player(member, opponent) from cached weights.
  static double value_vs(const Member& m, std::span<const double> opponent_reach) {
    return dot(m.weighted, opponent_reach);
  }

  std::uint64_t stream(int player) const {
    return 2 * static_cast<std::uint64_t>(iteration_) + static_cast<std::uint64_t>(player);
  }

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

  NormalFormGame empirical(const std::array<std::vector<const Member*>, 2>& pops, Rng& rng) const {
    const std::size_t k = pops[0].size(), m = pops[1].size();
    std::vector<double> u(k * m);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        u[a * m + b] = config_.metasolver.payoff_rollouts > 0
                           ? eval::rollout_value(pops[0][a]->policy, pops[1][b]->policy,
                                                 config_.metasolver.payoff_rollouts, rng)
                           : value_vs(*pops[0][a], pops[1][b]->reach);
      }
    }
    return NormalFormGame(k, m, std::move(u));
  }

  NashSolution restricted_ne(const NormalFormGame& g) const {
    if (config_.metasolver.kind == MetasolverKind::kFictitiousPlay) {
      auto [x, y] = fictitious_play(g, config_.metasolver.fp_iterations);
      return {std::move(x), std::move(y), 0.0};
    }
    return exact_nash_zero_sum(g);
  }

  std::array<std::vector<const Member*>, 2> current_members() const {
    std::array<std::vector<const Member*>, 2> out;
    for (std::size_t p = 0; p < 2; ++p) {
      for (const auto& m : members_[p]) out[p].push_back(&m);
    }
    return out;
  }

  TreePolicy nu_average(const RealizationAverager& avg, const TreePolicy& last) const {
    return avg.count() > 0 ? avg.result() : last;
  }

  // -- Exact-oracle loops ------------------------------------------------------

  LoopResult exact_fixed_loop(int player, std::span<const double> target_reach) const {
    const int opp = opponent_of(player);
    LoopResult r;
    const std::int64_t steps = static_cast<std::int64_t>(config_.schedule.n) * config_.schedule.m;
    if (steps == 0) {
      r.beta = TreePolicy::uniform(*tree_, opp);
      r.nu_last = TreePolicy::uniform(*tree_, player);
      r.nu_average = r.nu_last;
      return r;
    }
    // The target is fixed, so every step reproduces the same best responses.
    r.beta = best_response_to_reach(*tree_, opp, target_reach).policy;
    r.nu_last = best_response_to_reach(*tree_, player, terminal_reach(*r.beta)).policy;
    r.nu_average = r.nu_last;
    r.episodes = steps;
    return r;
  }

  LoopResult exact_no_regret_loop(int player, bool with_nu) const {
    const int opp = opponent_of(player);
    const auto& members = members_[static_cast<std::size_t>(player)];
    const std::size_t k_old = members.size();
    RegretLearner pi(config_.metasolver, k_old + (with_nu ? 1 : 0), range_[static_cast<std::size_t>(player)]);
    Rng rng = make_rng(seed_, stream(player));
    TreePolicy beta = TreePolicy::uniform(*tree_, opp);
    TreePolicy nu = TreePolicy::uniform(*tree_, player);
    auto beta_reach = terminal_reach(beta);
    auto nu_reach = terminal_reach(nu);
    RealizationAverager avg(*tree_, player);
    std::int64_t nu_updates = 0;
    std::vector<double> payoffs(pi.arms());
    for (int outer = 0; outer < config_.schedule.n; ++outer) {
      const auto dist = pi.distribution();
      std::vector<double> base(tree_->num_terminals(), 0.0);
      for (std::size_t k = 0; k < k_old; ++k) {
        for (std::size_t z = 0; z < base.size(); ++z) base[z] += dist[k] * members[k].reach[z];
      }
      for (int inner = 0; inner < config_.schedule.m; ++inner) {
        if (with_nu) {
          auto target = base;
          for (std::size_t z = 0; z < target.size(); ++z) target[z] += dist[k_old] * nu_reach[z];
          beta = best_response_to_reach(*tree_, opp, target).policy;
          beta_reach = terminal_reach(beta);
          nu = best_response_to_reach(*tree_, player, beta_reach).policy;
          nu_reach = terminal_reach(nu);
          if (++nu_updates % config_.schedule.checkpoint_every == 0) avg.add(nu);
        } else {
          beta = best_response_to_reach(*tree_, opp, base).policy;
          beta_reach = terminal_reach(beta);
        }
      }
      for (std::size_t k = 0; k < k_old; ++k) payoffs[k] = value_vs(members[k], beta_reach);
      if (with_nu) payoffs[k_old] = value_vs(make_member(player, nu), beta_reach);
      pi.update(payoffs, rng);
    }
    LoopResult r;
    r.nu_average = nu_average(avg, nu);
    r.beta = std::move(beta);
    r.nu_last = std::move(nu);
    r.pi_average = pi.time_average();
    r.episodes = static_cast<std::int64_t>(config_.schedule.n) * config_.schedule.m;
    return r;
  }

  // -- Tabular Q-learning loops ------------------------------------------------

  // `fixed` set: sample the population side from it (PSRO / not-anytime).
  // Otherwise a no-regret learner over the population (plus nu) does.
  LoopResult q_loop(int player, bool with_nu, const std::vector<double>* fixed) const {
    const int opp = opponent_of(player);
    const auto& members = members_[static_cast<std::size_t>(player)];
    const std::size_t k_old = members.size();
    const bool nu_is_arm = with_nu && fixed == nullptr;
    const auto& sched = config_.schedule;
    Rng rng = make_rng(seed_, stream(player));
    QAgent beta(*tree_, opp, config_.oracle.q_lr, config_.oracle.q_epsilon);
    QAgent nu(*tree_, player, config_.oracle.q_lr, config_.oracle.q_epsilon);
    std::optional<RegretLearner> pi;
    if (fixed == nullptr) pi.emplace(config_.metasolver, k_old + (nu_is_arm ? 1 : 0), range_[static_cast<std::size_t>(player)]);
    RealizationAverager avg(*tree_, player);
    const bool sampled = config_.metasolver.sampled_payoffs && pi.has_value();
    std::vector<std::deque<double>> windows(sampled ? k_old + (nu_is_arm ? 1 : 0) : 0);

    LoopResult r;
    std::vector<double> dist = fixed != nullptr ? *fixed : pi->distribution();
    for (int b = 0; b < sched.batches; ++b) {
      std::size_t last_arm = 0;
      auto sampler = [&](Rng& g) -> const TreePolicy* {
        last_arm = sample_index(dist, g);
        return last_arm == k_old ? nullptr : &members[last_arm].policy;
      };
      const std::int64_t episodes = batch_share(sched.episodes_per_iteration, sched.batches, b);
      for (std::int64_t e = 0; e < episodes; ++e) {
        const double ret = q_learning_episode(beta, with_nu ? &nu : nullptr, *tree_, sampler, rng);
        if (sampled) {
          auto& w = windows[last_arm];
          w.push_back(ret);
          if (static_cast<int>(w.size()) > config_.metasolver.payoff_window) w.pop_front();
        }
      }
      r.episodes += episodes;
      if (with_nu && (b + 1) % sched.checkpoint_every == 0) avg.add(nu.greedy_policy());
      if (!pi) continue;
      const std::int64_t updates = batch_share(sched.metasolver_updates_per_iteration, sched.batches, b);
      if (updates == 0) continue;
      std::vector<double> payoffs(pi->arms(), 0.0);
      if (sampled) {
        for (std::size_t k = 0; k < payoffs.size(); ++k) {
          if (windows[k].empty()) continue;
          double s = 0.0;
          for (double x : windows[k]) s += x;
          payoffs[k] = s / static_cast<double>(windows[k].size());
        }
      } else {
        const auto beta_reach = terminal_reach(beta.greedy_policy());
        for (std::size_t k = 0; k < k_old; ++k) payoffs[k] = value_vs(members[k], beta_reach);
        if (nu_is_arm) payoffs[k_old] = value_vs(make_member(player, nu.greedy_policy()), beta_reach);
      }
      for (std::int64_t u = 0; u < updates; ++u) pi->update(payoffs, rng);
      dist = pi->distribution();
    }
    r.beta = beta.greedy_policy();
    r.nu_last = nu.greedy_policy();
    r.nu_average = nu_average(avg, *r.nu_last);
    if (pi) r.pi_average = pi->time_average();
    return r;
  }

  // -- Iterations --------------------------------------------------------------

  // PSRO, and the not-anytime variant when `with_nu`.
  IterationOutcome fixed_target_iteration(bool with_nu) {
    Rng payoff_rng = make_rng(seed_, 2 * static_cast<std::uint64_t>(iteration_) + 1000003);
    const auto ne = restricted_ne(empirical(current_members(), payoff_rng));
    const std::array<std::vector<double>, 2> target{ne.row.probs(), ne.col.probs()};
    auto loops = for_both_players([&](int p) {
      const auto& t = target[static_cast<std::size_t>(p)];
      if (config_.oracle.kind == OracleKind::kExact) return exact_fixed_loop(p, mixture_reach(p, t));
      return q_loop(p, with_nu, &t);
    });

    std::array<std::vector<double>, 2> report = target;
    if (with_nu) {
      // Restricted NE over the old population plus each new average.
      std::array<Member, 2> extra{make_member(0, *loops[0].nu_average), make_member(1, *loops[1].nu_average)};
      auto pops = current_members();
      for (std::size_t p = 0; p < 2; ++p) pops[p].push_back(&extra[p]);
      const auto ext = restricted_ne(empirical(pops, payoff_rng));
      report = {ext.row.probs(), ext.col.probs()};
    }
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) {
      const std::size_t k_old = population_.size(p);
      append(p, *loops[static_cast<std::size_t>(opponent_of(p))].beta, Provenance::kBeta);
      if (with_nu) append(p, *loops[static_cast<std::size_t>(p)].nu_average, Provenance::kNuBar);
      out.distribution[static_cast<std::size_t>(p)] = pad_distribution(report[static_cast<std::size_t>(p)], k_old, with_nu);
      out.episodes += loops[static_cast<std::size_t>(p)].episodes;
    }
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  IterationOutcome no_regret_iteration(bool with_nu, bool last_iterate) {
    auto loops = for_both_players([&](int p) {
      if (config_.oracle.kind == OracleKind::kExact) return exact_no_regret_loop(p, with_nu);
      return q_loop(p, with_nu, nullptr);
    });
    IterationOutcome out;
    for (int p = 0; p < 2; ++p) {
      const auto& own = loops[static_cast<std::size_t>(p)];
      const std::size_t k_old = population_.size(p);
      append(p, *loops[static_cast<std::size_t>(opponent_of(p))].beta, Provenance::kBeta);
      if (with_nu) {
        if (last_iterate) {
          append(p, *own.nu_last, Provenance::kNuLast);
        } else {
          append(p, *own.nu_average, Provenance::kNuBar);
        }
      }
      out.distribution[static_cast<std::size_t>(p)] = pad_distribution(own.pi_average, k_old, with_nu);
      out.episodes += own.episodes;
    }
    out.exploitability = exploitability_of(out.distribution);
    return out;
  }

  std::shared_ptr<const GameTree> tree_;
  SolverConfig config_;
  std::uint64_t seed_;
  std::vector<double> weights_;
  Population population_;
  std::array<std::vector<Member>, 2> members_;
  std::array<std::pair<double, double>, 2> range_;
  int iteration_ = 0;
};

}  // namespace sppsro
