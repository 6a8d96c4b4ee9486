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
#include <span>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/oracles/exact_best_response.hpp"

// Exact evaluation. Everything here is a full traversal or a matrix product;
// nothing samples.

namespace sppsro::eval {

// -- Normal form --------------------------------------------------------------

/// e(x, y) = max_i (U y)_i + max_j (-U^T x)_j.
inline double exploitability(const NormalFormGame& game, std::span<const double> row,
                             std::span<const double> col) {
  return exact_br_nfg(game, col, 0).value + exact_br_nfg(game, row, 1).value;
}

inline double exploitability(const NormalFormGame& game, const MixedStrategy& row,
                             const MixedStrategy& col) {
  return exploitability(game, row.span(), col.span());
}

/// Exploitability of a pair of restricted distributions over populations.
inline double exploitability(const NormalFormGame& game,
                             const std::array<std::span<const PopulationStrategy>, 2>& population,
                             const std::array<std::span<const double>, 2>& distribution) {
  const auto x = to_mixed(population[0], distribution[0], game.rows());
  const auto y = to_mixed(population[1], distribution[1], game.cols());
  return exploitability(game, x, y);
}

/// Entry (k, l) = v_0(population0[k], population1[l]).
inline NormalFormGame empirical_matrix(const NormalFormGame& game,
                                       std::span<const PopulationStrategy> population0,
                                       std::span<const PopulationStrategy> population1) {
  if (population0.empty() || population1.empty()) throw ShapeError("empirical_matrix: empty population");
  std::vector<std::vector<double>> rows, cols;
  for (const auto& s : population0) rows.push_back(to_mixed(s, game.rows()));
  for (const auto& s : population1) cols.push_back(to_mixed(s, game.cols()));
  std::vector<double> u(rows.size() * cols.size());
  for (std::size_t l = 0; l < cols.size(); ++l) {
    const auto rv = game.row_values(cols[l]);
    for (std::size_t k = 0; k < rows.size(); ++k) u[k * cols.size() + l] = dot(rows[k], rv);
  }
  return NormalFormGame(rows.size(), cols.size(), std::move(u));
}

/// k-th entry = v_player(population[k], opponent).
inline std::vector<double> arm_payoffs(const NormalFormGame& game, int player,
                                       std::span<const PopulationStrategy> population,
                                       std::span<const double> opponent) {
  const auto values = game.pure_values(player, opponent);
  std::vector<double> out;
  out.reserve(population.size());
  for (const auto& s : population) out.push_back(dot(to_mixed(s, values.size()), values));
  return out;
}

// -- Extensive form -----------------------------------------------------------

/// Player 0's expected value given both players' terminal realization weights.
inline double expected_value(const GameTree& tree, std::span<const double> reach0,
                             std::span<const double> reach1) {
  if (reach0.size() != tree.num_terminals() || reach1.size() != tree.num_terminals()) {
    throw ShapeError("expected_value: terminal reach has wrong length");
  }
  const auto& chance = tree.chance_reach();
  double v = 0.0;
  for (std::size_t z = 0; z < tree.num_terminals(); ++z) {
    const int node = tree.terminals()[z];
    v += reach0[z] * reach1[z] * chance[static_cast<std::size_t>(node)] * tree.node(node).payoff;
  }
  return v;
}

inline double expected_value(const TreePolicy& p0, const TreePolicy& p1) {
  return expected_value(p0.tree(), terminal_reach(p0), terminal_reach(p1));
}

inline double expected_value(const GameTree& tree, const PopulationStrategy& s0,
                             const PopulationStrategy& s1) {
  return expected_value(tree, terminal_reach(tree, s0, 0), terminal_reach(tree, s1, 1));
}

/// Player 0's value weights at each terminal: chance * payoff. Dotting with
/// the product of both players' reach gives the expected value.
inline std::vector<double> terminal_weights(const GameTree& tree) {
  std::vector<double> out(tree.num_terminals());
  for (std::size_t z = 0; z < out.size(); ++z) {
    const int node = tree.terminals()[z];
    out[z] = tree.chance_reach()[static_cast<std::size_t>(node)] * tree.node(node).payoff;
  }
  return out;
}

inline double exploitability(const GameTree& tree, std::span<const double> reach0,
                             std::span<const double> reach1) {
  return best_response_to_reach(tree, 0, reach1).value + best_response_to_reach(tree, 1, reach0).value;
}

inline double exploitability(const GameTree& tree, const PopulationStrategy& s0,
                             const PopulationStrategy& s1) {
  return exploitability(tree, terminal_reach(tree, s0, 0), terminal_reach(tree, s1, 1));
}

inline double exploitability(const TreePolicy& p0, const TreePolicy& p1) {
  return exploitability(p0.tree(), terminal_reach(p0), terminal_reach(p1));
}

/// Mixture-weighted terminal reach of a restricted distribution.
inline std::vector<double> mixture_terminal_reach(const GameTree& tree, int player,
                                                  std::span<const PopulationStrategy> population,
                                                  std::span<const double> distribution) {
  if (population.size() != distribution.size()) throw ShapeError("population/distribution mismatch");
  std::vector<double> reach(tree.num_terminals(), 0.0);
  for (std::size_t k = 0; k < population.size(); ++k) {
    if (distribution[k] == 0.0) continue;
    auto r = terminal_reach(tree, population[k], player);
    for (std::size_t z = 0; z < reach.size(); ++z) reach[z] += distribution[k] * r[z];
  }
  return reach;
}

inline double exploitability(const GameTree& tree,
                             const std::array<std::span<const PopulationStrategy>, 2>& population,
                             const std::array<std::span<const double>, 2>& distribution) {
  return exploitability(tree, mixture_terminal_reach(tree, 0, population[0], distribution[0]),
                        mixture_terminal_reach(tree, 1, population[1], distribution[1]));
}

inline NormalFormGame empirical_matrix(const GameTree& tree,
                                       std::span<const PopulationStrategy> population0,
                                       std::span<const PopulationStrategy> population1) {
  if (population0.empty() || population1.empty()) throw ShapeError("empirical_matrix: empty population");
  const auto weights = terminal_weights(tree);
  std::vector<std::vector<double>> r0, r1;
  for (const auto& s : population0) {
    auto r = terminal_reach(tree, s, 0);
    for (std::size_t z = 0; z < r.size(); ++z) r[z] *= weights[z];
    r0.push_back(std::move(r));
  }
  for (const auto& s : population1) r1.push_back(terminal_reach(tree, s, 1));
  std::vector<double> u(r0.size() * r1.size());
  for (std::size_t k = 0; k < r0.size(); ++k) {
    for (std::size_t l = 0; l < r1.size(); ++l) u[k * r1.size() + l] = dot(r0[k], r1[l]);
  }
  return NormalFormGame(r0.size(), r1.size(), std::move(u));
}

inline std::vector<double> arm_payoffs(const GameTree& tree, int player,
                                       std::span<const PopulationStrategy> population,
                                       std::span<const double> opponent_terminal_reach) {
  const auto weights = terminal_weights(tree);
  const double sign = player == 0 ? 1.0 : -1.0;
  std::vector<double> out;
  out.reserve(population.size());
  for (const auto& s : population) {
    auto r = terminal_reach(tree, s, player);
    double v = 0.0;
    for (std::size_t z = 0; z < r.size(); ++z) v += r[z] * opponent_terminal_reach[z] * weights[z];
    out.push_back(sign * v);
  }
  return out;
}

}  // namespace sppsro::eval
