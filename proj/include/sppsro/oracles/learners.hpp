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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/game/simulation.hpp"
#include "sppsro/oracles/exact_best_response.hpp"

namespace sppsro {

// -- Normal form: smoothed best response ---------------------------------------

/// Emulates gradual best-response training in a matrix game:
/// current <- (1 - lambda) * current + lambda * onehot(BR(opponent)).
struct SmoothedLearner {
  std::vector<double> current;
  double lambda = 0.1;

  static SmoothedLearner uniform(std::size_t n, double lambda) { return {uniform_vector(n), lambda}; }

  /// Most likely pure strategy (lowest index on ties).
  std::size_t greedy() const { return argmax(current); }
};

inline void smoothed_br_step_inplace(SmoothedLearner& learner, const NormalFormGame& game,
                                     std::span<const double> opponent, int player) {
  const std::size_t br = exact_br_nfg(game, opponent, player).index;
  const double keep = 1.0 - learner.lambda;
  for (double& x : learner.current) x *= keep;
  learner.current[br] += learner.lambda;
}

inline SmoothedLearner smoothed_br_step(SmoothedLearner learner, const NormalFormGame& game,
                                        std::span<const double> opponent, int player) {
  smoothed_br_step_inplace(learner, game, opponent, player);
  return learner;
}

// -- Extensive form: tabular Q-learning -----------------------------------------

/// Tabular epsilon-greedy Q-learner for one player of a flattened tree.
/// Q-values start at 0; updates are undiscounted one-step Q-learning.
class QAgent {
 public:
  QAgent(const GameTree& tree, int player, double learning_rate = 0.025, double epsilon = 0.2)
      : tree_(&tree), player_(player), q_(tree.num_slots(player), 0.0), lr_(learning_rate), epsilon_(epsilon) {
    if (!(epsilon_ >= 0.0 && epsilon_ <= 1.0)) throw ParameterError("QAgent: epsilon must be in [0, 1]");
  }

  int player() const { return player_; }
  double learning_rate() const { return lr_; }
  double epsilon() const { return epsilon_; }
  const GameTree& tree() const { return *tree_; }

  std::span<const double> q(int infoset) const {
    const auto& s = tree_->infoset(player_, infoset);
    return {q_.data() + s.offset, s.actions.size()};
  }

  std::size_t greedy_action(int infoset) const { return argmax(q(infoset)); }

  double max_q(int infoset) const { return q(infoset)[greedy_action(infoset)]; }

  std::size_t act(int infoset, Rng& rng) const {
    if (epsilon_ > 0.0 && uniform01(rng) < epsilon_) {
      return uniform_index(tree_->infoset(player_, infoset).actions.size(), rng);
    }
    return greedy_action(infoset);
  }

  /// Q(s, a) += lr * (target - Q(s, a)).
  void update(int infoset, std::size_t action, double target) {
    const auto& s = tree_->infoset(player_, infoset);
    double& v = q_[static_cast<std::size_t>(s.offset) + action];
    v += lr_ * (target - v);
  }

  /// One-step target: terminal reward, or max Q at the next own infoset.
  void observe(int infoset, std::size_t action, int next_infoset, double reward) {
    update(infoset, action, next_infoset < 0 ? reward : max_q(next_infoset));
  }

  TreePolicy greedy_policy() const {
    TreePolicy p(*tree_, player_);
    for (int s = 0; s < static_cast<int>(tree_->infosets(player_).size()); ++s) {
      p.probs(s)[greedy_action(s)] = 1.0;
    }
    return p;
  }

  /// (infoset key, action id) -> value, for inspection.
  std::map<std::pair<std::string, int>, double> q_table() const {
    std::map<std::pair<std::string, int>, double> out;
    for (const auto& s : tree_->infosets(player_)) {
      for (std::size_t a = 0; a < s.actions.size(); ++a) {
        out[{s.key, s.actions[a]}] = q_[static_cast<std::size_t>(s.offset) + a];
      }
    }
    return out;
  }

 private:
  const GameTree* tree_;
  int player_;
  std::vector<double> q_;
  double lr_;
  double epsilon_;
};

/// One training episode between a population-side policy and the learning
/// best response.
///
/// `sampler(rng)` draws the population-side policy for this episode: a
/// frozen TreePolicy, or nullptr meaning the live `nu` agent plays
/// (epsilon-greedy). `br` always plays epsilon-greedy and learns from its own
/// transitions. When `nu` is given it also learns, off-policy, from every
/// population-side transition whichever policy produced it. Returns the
/// population side's return.
template <class Sampler>
double q_learning_episode(QAgent& br, QAgent* nu, const GameTree& tree, Sampler&& sampler, Rng& rng) {
  const int br_player = br.player();
  const int pop_player = opponent_of(br_player);
  const TreePolicy* frozen = sampler(rng);
  if (frozen == nullptr && nu == nullptr) throw ParameterError("q_learning_episode: sampler chose nu but none given");
  auto pop_actor = [&](int infoset, Rng& r) -> std::size_t {
    if (frozen != nullptr) return sample_index(frozen->probs(infoset), r);
    return nu->act(infoset, r);
  };
  auto br_actor = [&](int infoset, Rng& r) -> std::size_t { return br.act(infoset, r); };
  auto learn = [&](int player, int infoset, int action, int next, double reward) {
    if (player == br_player) {
      br.observe(infoset, static_cast<std::size_t>(action), next, reward);
    } else if (nu != nullptr) {
      nu->observe(infoset, static_cast<std::size_t>(action), next, reward);
    }
  };
  double ret0;
  if (pop_player == 0) {
    ret0 = play_episode(tree, pop_actor, br_actor, rng, learn);
  } else {
    ret0 = play_episode(tree, br_actor, pop_actor, rng, learn);
  }
  return pop_player == 0 ? ret0 : -ret0;
}

}  // namespace sppsro
