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

#include <limits>
#include <span>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"

namespace sppsro {

struct NfgBestResponse {
  std::size_t index = 0;
  double value = 0.0;
};

/// Pure best response of `player` to the opponent's mixed strategy. Ties go
/// to the lowest index.
inline NfgBestResponse exact_br_nfg(const NormalFormGame& game, std::span<const double> opponent,
                                    int player) {
  const auto values = game.pure_values(player, opponent);
  const std::size_t i = argmax(values);
  return {i, values[i]};
}

inline NfgBestResponse exact_br_nfg(const NormalFormGame& game, const MixedStrategy& opponent,
                                    int player) {
  return exact_br_nfg(game, opponent.span(), player);
}

struct EfgBestResponse {
  TreePolicy policy;
  double value = 0.0;
};

/// Best response of `responder` given the opponent's realization weights at
/// each terminal (terminal order of the tree).
///
/// Works on counterfactually weighted values: W(z) = opponent_reach(z) *
/// chance_reach(z) * u(z) at terminals, sums elsewhere, and at a responder
/// node the W of the child chosen for its infoset. Each infoset picks the
/// action maximizing the sum of W over its histories (lowest index on ties),
/// so W(root) is the exact best-response value. Infosets with zero weight
/// take their first action.
inline EfgBestResponse best_response_to_reach(const GameTree& tree, int responder,
                                              std::span<const double> opponent_terminal_reach) {
  if (opponent_terminal_reach.size() != tree.num_terminals()) {
    throw ShapeError("best_response_to_reach: terminal reach has wrong length");
  }
  const double sign = responder == 0 ? 1.0 : -1.0;
  const auto& chance = tree.chance_reach();
  const auto& sets = tree.infosets(responder);
  std::vector<double> w(tree.num_nodes(), 0.0);
  std::vector<char> done(tree.num_nodes(), 0);
  std::vector<int> best(sets.size(), -1);

  auto value = [&](auto&& self, int n) -> double {
    if (done[static_cast<std::size_t>(n)]) return w[static_cast<std::size_t>(n)];
    const auto& node = tree.node(n);
    double v = 0.0;
    if (node.player == kTerminalPlayer) {
      v = opponent_terminal_reach[static_cast<std::size_t>(node.terminal)] *
          chance[static_cast<std::size_t>(n)] * sign * node.payoff;
    } else if (node.player == responder) {
      const int s = node.infoset;
      if (best[static_cast<std::size_t>(s)] < 0) {
        const auto& info = sets[static_cast<std::size_t>(s)];
        std::vector<double> totals(info.actions.size(), 0.0);
        for (int h : info.nodes) {
          for (std::size_t a = 0; a < totals.size(); ++a) {
            totals[a] += self(self, tree.child(h, static_cast<int>(a)));
          }
        }
        best[static_cast<std::size_t>(s)] = static_cast<int>(argmax(totals));
      }
      v = self(self, tree.child(n, best[static_cast<std::size_t>(s)]));
    } else {
      for (int c = 0; c < node.num_children; ++c) v += self(self, node.first_child + c);
    }
    done[static_cast<std::size_t>(n)] = 1;
    w[static_cast<std::size_t>(n)] = v;
    return v;
  };

  // The root pass visits every node, so every infoset has a decision.
  EfgBestResponse out{TreePolicy(tree, responder), value(value, 0)};
  for (std::size_t s = 0; s < sets.size(); ++s) {
    out.policy.probs(sets[s])[static_cast<std::size_t>(best[s])] = 1.0;
  }
  return out;
}

/// Terminal realization weights of a population strategy.
inline std::vector<double> terminal_reach(const GameTree& tree, const PopulationStrategy& strategy,
                                          int player) {
  return at_terminals(tree, realization_reach(tree, strategy, player));
}

inline std::vector<double> terminal_reach(const TreePolicy& policy) {
  return at_terminals(policy.tree(), realization_reach(policy));
}

/// Exact best response against a (possibly mixture) opponent strategy.
inline EfgBestResponse exact_br_efg(const GameTree& tree, const PopulationStrategy& opponent,
                                    int opponent_player) {
  return best_response_to_reach(tree, opponent_of(opponent_player),
                                terminal_reach(tree, opponent, opponent_player));
}

/// Exact best response against a restricted distribution over a population.
inline EfgBestResponse exact_br_efg(const GameTree& tree, std::span<const PopulationStrategy> population,
                                    std::span<const double> distribution, int opponent_player) {
  if (population.size() != distribution.size()) throw ShapeError("exact_br_efg: population/distribution mismatch");
  std::vector<double> reach(tree.num_terminals(), 0.0);
  for (std::size_t k = 0; k < population.size(); ++k) {
    if (distribution[k] == 0.0) continue;
    auto r = terminal_reach(tree, population[k], opponent_player);
    for (std::size_t z = 0; z < reach.size(); ++z) reach[z] += distribution[k] * r[z];
  }
  return best_response_to_reach(tree, opponent_of(opponent_player), reach);
}

}  // namespace sppsro
