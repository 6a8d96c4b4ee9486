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

#include <vector>

#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"

namespace sppsro::zoo {

/// Number of deterministic policies of `player`, or 0 if it exceeds `limit`.
inline std::size_t count_pure_policies(const GameTree& tree, int player, std::size_t limit) {
  std::size_t n = 1;
  for (const auto& s : tree.infosets(player)) {
    n *= s.actions.size();
    if (n > limit) return 0;
  }
  return n;
}

/// The index-th deterministic policy in mixed-radix order: the first infoset
/// (tree order) is the least significant digit.
inline TreePolicy pure_policy(const GameTree& tree, int player, std::size_t index) {
  TreePolicy p(tree, player);
  for (const auto& s : tree.infosets(player)) {
    const std::size_t k = s.actions.size();
    p.probs(s)[index % k] = 1.0;
    index /= k;
  }
  return p;
}

/// Normal form induced by an extensive game: one pure strategy per
/// deterministic policy. Throws if either side has more than `limit`.
inline NormalFormGame induced_normal_form(const GameTree& tree, std::size_t limit = 4096) {
  const std::size_t n0 = count_pure_policies(tree, 0, limit);
  const std::size_t n1 = count_pure_policies(tree, 1, limit);
  if (n0 == 0 || n1 == 0) throw ParameterError("induced_normal_form: too many pure strategies");
  const auto& chance = tree.chance_reach();
  std::vector<std::vector<double>> r0(n0), r1(n1);
  for (std::size_t i = 0; i < n0; ++i) {
    auto r = realization_reach(pure_policy(tree, 0, i));
    r0[i] = at_terminals(tree, r);
    for (std::size_t z = 0; z < tree.num_terminals(); ++z) {
      const int node = tree.terminals()[z];
      r0[i][z] *= chance[static_cast<std::size_t>(node)] * tree.node(node).payoff;
    }
  }
  for (std::size_t j = 0; j < n1; ++j) r1[j] = at_terminals(tree, realization_reach(pure_policy(tree, 1, j)));
  std::vector<double> u(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) u[i * n1 + j] = dot(r0[i], r1[j]);
  }
  return NormalFormGame(n0, n1, std::move(u));
}

}  // namespace sppsro::zoo
