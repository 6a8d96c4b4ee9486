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

#include "sppsro/common.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/policy.hpp"

namespace sppsro {

/// Plays one episode on a flattened tree.
///
/// `actor0` / `actor1` are callables (int infoset, Rng&) -> action index.
/// `on_transition(player, infoset, action_index, next_infoset, reward)` fires
/// once per decision, when the same player's next decision is reached
/// (next_infoset >= 0, reward 0) or the episode ends (next_infoset == -1,
/// reward = that player's terminal return). Returns player 0's return.
template <class Actor0, class Actor1, class OnTransition>
double play_episode(const GameTree& tree, Actor0&& actor0, Actor1&& actor1, Rng& rng,
                    OnTransition&& on_transition) {
  std::array<int, 2> last_infoset{-1, -1};
  std::array<int, 2> last_action{-1, -1};
  int n = 0;
  while (true) {
    const auto& node = tree.node(n);
    if (node.player == kTerminalPlayer) {
      for (int p = 0; p < 2; ++p) {
        if (last_infoset[p] >= 0) {
          on_transition(p, last_infoset[p], last_action[p], -1, p == 0 ? node.payoff : -node.payoff);
        }
      }
      return node.payoff;
    }
    if (node.player == kChancePlayer) {
      double u = uniform01(rng);
      int pick = node.num_children - 1;
      for (int c = 0; c < node.num_children; ++c) {
        u -= tree.node(node.first_child + c).chance_prob;
        if (u < 0.0) {
          pick = c;
          break;
        }
      }
      n = node.first_child + pick;
      continue;
    }
    const int p = node.player;
    if (last_infoset[p] >= 0) on_transition(p, last_infoset[p], last_action[p], node.infoset, 0.0);
    const int a = p == 0 ? static_cast<int>(actor0(node.infoset, rng))
                         : static_cast<int>(actor1(node.infoset, rng));
    last_infoset[p] = node.infoset;
    last_action[p] = a;
    n = node.first_child + a;
  }
}

/// Actor that samples from a fixed tabular policy.
struct PolicyActor {
  const TreePolicy* policy;
  std::size_t operator()(int infoset, Rng& rng) const {
    return sample_index(policy->probs(infoset), rng);
  }
};

inline constexpr auto kIgnoreTransition = [](int, int, int, int, double) {};

}  // namespace sppsro
