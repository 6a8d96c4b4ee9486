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
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"

namespace sppsro {

// -- Behavior policies --------------------------------------------------------

/// Tabular behavior strategy: infoset key -> distribution over that infoset's
/// legal actions (in legal-action order). Ordered map so serialized policies
/// diff cleanly.
class BehaviorPolicy {
 public:
  using Table = std::map<std::string, std::vector<double>>;

  BehaviorPolicy() = default;
  explicit BehaviorPolicy(Table table) : table_(std::move(table)) {}

  const Table& table() const { return table_; }
  std::size_t size() const { return table_.size(); }
  bool contains(const std::string& key) const { return table_.count(key) != 0; }

  const std::vector<double>& at(const std::string& key) const {
    auto it = table_.find(key);
    if (it == table_.end()) throw MissingPolicyError("no policy entry for infoset '" + key + "'");
    return it->second;
  }

  /// Lazy insertion: an unseen infoset becomes uniform over `num_actions`.
  const std::vector<double>& get_or_uniform(const std::string& key, std::size_t num_actions) {
    auto it = table_.find(key);
    if (it == table_.end()) it = table_.emplace(key, uniform_vector(num_actions)).first;
    return it->second;
  }

  void set(const std::string& key, std::vector<double> probs) {
    table_[key] = std::move(probs);
  }

  friend bool operator==(const BehaviorPolicy&, const BehaviorPolicy&) = default;

 private:
  Table table_;
};

/// Dense per-tree form of a behavior policy: one probability per
/// (infoset, action) slot of `player`, laid out by GameTree::Infoset::offset.
class TreePolicy {
 public:
  TreePolicy(const GameTree& tree, int player)
      : tree_(&tree), player_(player), probs_(tree.num_slots(player), 0.0) {}

  static TreePolicy uniform(const GameTree& tree, int player) {
    TreePolicy p(tree, player);
    for (const auto& s : tree.infosets(player)) {
      for (std::size_t a = 0; a < s.actions.size(); ++a) {
        p.probs_[static_cast<std::size_t>(s.offset) + a] = 1.0 / static_cast<double>(s.actions.size());
      }
    }
    return p;
  }

  /// Deterministic policy playing the first legal action everywhere.
  static TreePolicy first_action(const GameTree& tree, int player) {
    TreePolicy p(tree, player);
    for (const auto& s : tree.infosets(player)) p.probs_[static_cast<std::size_t>(s.offset)] = 1.0;
    return p;
  }

  /// Strict conversion: every infoset of `player` must be present.
  static TreePolicy compile(const GameTree& tree, int player, const BehaviorPolicy& policy) {
    TreePolicy p(tree, player);
    for (const auto& s : tree.infosets(player)) {
      const auto& probs = policy.at(s.key);
      if (probs.size() != s.actions.size()) {
        throw ShapeError("policy entry for '" + s.key + "' has " + std::to_string(probs.size()) +
                         " probabilities, infoset has " + std::to_string(s.actions.size()) +
                         " actions");
      }
      std::copy(probs.begin(), probs.end(), p.probs_.begin() + s.offset);
    }
    return p;
  }

  BehaviorPolicy to_behavior() const {
    BehaviorPolicy::Table t;
    for (const auto& s : tree_->infosets(player_)) {
      auto v = probs(s);
      t.emplace(s.key, std::vector<double>(v.begin(), v.end()));
    }
    return BehaviorPolicy(std::move(t));
  }

  const GameTree& tree() const { return *tree_; }
  int player() const { return player_; }

  std::span<const double> probs(const GameTree::Infoset& s) const {
    return {probs_.data() + s.offset, s.actions.size()};
  }
  std::span<double> probs(const GameTree::Infoset& s) {
    return {probs_.data() + s.offset, s.actions.size()};
  }
  std::span<const double> probs(int infoset) const { return probs(tree_->infoset(player_, infoset)); }
  std::span<double> probs(int infoset) { return probs(tree_->infoset(player_, infoset)); }

  const std::vector<double>& flat() const { return probs_; }
  std::vector<double>& flat() { return probs_; }

  friend bool operator==(const TreePolicy& a, const TreePolicy& b) {
    return a.tree_ == b.tree_ && a.player_ == b.player_ && a.probs_ == b.probs_;
  }

 private:
  const GameTree* tree_;
  int player_;
  std::vector<double> probs_;
};

// -- Population strategies ----------------------------------------------------

struct PureStrategy {
  std::size_t index = 0;
  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;
};

using LeafStrategy = std::variant<PureStrategy, MixedStrategy, BehaviorPolicy>;

/// Finite weighted mixture of leaf strategies of one game type. This is how
/// the time average of a training run is kept: one component per checkpoint.
struct CheckpointMixture {
  std::vector<double> weights;
  std::vector<LeafStrategy> components;
  friend bool operator==(const CheckpointMixture&, const CheckpointMixture&) = default;
};

class PopulationStrategy {
 public:
  using Variant = std::variant<PureStrategy, MixedStrategy, BehaviorPolicy, CheckpointMixture>;

  PopulationStrategy(PureStrategy s) : v_(s) {}
  PopulationStrategy(MixedStrategy s) : v_(std::move(s)) {}
  PopulationStrategy(BehaviorPolicy s) : v_(std::move(s)) {}

  /// Builds a mixture, flattening nested mixtures so depth never exceeds one.
  static PopulationStrategy mixture(std::span<const double> weights,
                                    std::span<const PopulationStrategy> components) {
    if (weights.size() != components.size() || components.empty()) {
      throw ShapeError("mixture: weights and components must be non-empty and equal length");
    }
    if (!is_distribution(weights)) throw ParameterError("mixture: weights are not a distribution");
    CheckpointMixture m;
    for (std::size_t c = 0; c < components.size(); ++c) {
      if (weights[c] == 0.0) continue;
      std::visit(
          [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CheckpointMixture>) {
              for (std::size_t k = 0; k < s.components.size(); ++k) {
                m.weights.push_back(weights[c] * s.weights[k]);
                m.components.push_back(s.components[k]);
              }
            } else {
              m.weights.push_back(weights[c]);
              m.components.push_back(s);
            }
          },
          components[c].variant());
    }
    const bool behavior = std::holds_alternative<BehaviorPolicy>(m.components.front());
    for (const auto& c : m.components) {
      if (std::holds_alternative<BehaviorPolicy>(c) != behavior) {
        throw ParameterError("mixture: components mix normal-form and behavior strategies");
      }
    }
    return PopulationStrategy(std::move(m));
  }

  static PopulationStrategy uniform_mixture(std::span<const PopulationStrategy> components) {
    auto w = uniform_vector(components.size());
    return mixture(w, components);
  }

  const Variant& variant() const { return v_; }
  bool is_behavior() const {
    if (auto* m = std::get_if<CheckpointMixture>(&v_)) {
      return std::holds_alternative<BehaviorPolicy>(m->components.front());
    }
    return std::holds_alternative<BehaviorPolicy>(v_);
  }

  friend bool operator==(const PopulationStrategy&, const PopulationStrategy&) = default;

 private:
  explicit PopulationStrategy(CheckpointMixture m) : v_(std::move(m)) {}
  Variant v_;
};

/// Probability vector over a player's population list.
class RestrictedDistribution {
 public:
  RestrictedDistribution() = default;
  explicit RestrictedDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (!is_distribution(probs_)) throw ParameterError("RestrictedDistribution: not a distribution");
  }
  static RestrictedDistribution uniform(std::size_t n) { return RestrictedDistribution(uniform_vector(n)); }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  /// Same distribution over a longer population; new slots get zero mass.
  RestrictedDistribution padded(std::size_t n) const {
    auto p = probs_;
    p.resize(n, 0.0);
    return RestrictedDistribution(std::move(p));
  }

 private:
  std::vector<double> probs_;
};

// -- Normal-form views --------------------------------------------------------

inline std::vector<double> leaf_to_mixed(const LeafStrategy& s, std::size_t n) {
  return std::visit(
      [n](const auto& x) -> std::vector<double> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PureStrategy>) {
          if (x.index >= n) throw ShapeError("pure strategy index out of range");
          return one_hot(n, x.index);
        } else if constexpr (std::is_same_v<T, MixedStrategy>) {
          if (x.size() != n) throw ShapeError("mixed strategy has wrong length");
          return x.probs();
        } else {
          throw ParameterError("behavior policy used in a normal-form game");
        }
      },
      s);
}

/// Mixed strategy over `n` pure strategies that a population strategy induces.
inline std::vector<double> to_mixed(const PopulationStrategy& s, std::size_t n) {
  if (auto* m = std::get_if<CheckpointMixture>(&s.variant())) {
    std::vector<double> out(n, 0.0);
    for (std::size_t c = 0; c < m->components.size(); ++c) {
      auto v = leaf_to_mixed(m->components[c], n);
      for (std::size_t i = 0; i < n; ++i) out[i] += m->weights[c] * v[i];
    }
    return out;
  }
  return std::visit(
      [n](const auto& x) -> std::vector<double> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CheckpointMixture>) {
          return {};
        } else {
          return leaf_to_mixed(LeafStrategy(x), n);
        }
      },
      s.variant());
}

/// Mixed strategy induced by a restricted distribution over a population.
inline std::vector<double> to_mixed(std::span<const PopulationStrategy> population,
                                    std::span<const double> weights, std::size_t n) {
  if (population.size() != weights.size()) throw ShapeError("to_mixed: population/weights mismatch");
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < population.size(); ++k) {
    if (weights[k] == 0.0) continue;
    auto v = to_mixed(population[k], n);
    for (std::size_t i = 0; i < n; ++i) out[i] += weights[k] * v[i];
  }
  return out;
}

// -- Extensive-form reach -----------------------------------------------------

/// Probability that `policy`'s own choices lead to each node (chance and the
/// opponent contribute factor 1).
inline std::vector<double> realization_reach(const TreePolicy& policy) {
  const GameTree& tree = policy.tree();
  const int player = policy.player();
  std::vector<double> reach(tree.num_nodes(), 1.0);
  for (std::size_t i = 1; i < tree.num_nodes(); ++i) {
    const auto& c = tree.node(static_cast<int>(i));
    const auto& p = tree.node(c.parent);
    double r = reach[static_cast<std::size_t>(c.parent)];
    if (p.player == player) r *= policy.probs(p.infoset)[static_cast<std::size_t>(c.action_index)];
    reach[i] = r;
  }
  return reach;
}

inline std::vector<double> leaf_realization_reach(const GameTree& tree, int player,
                                                  const LeafStrategy& leaf) {
  const auto* b = std::get_if<BehaviorPolicy>(&leaf);
  if (b == nullptr) throw ParameterError("realization_reach: normal-form strategy in extensive game");
  return realization_reach(TreePolicy::compile(tree, player, *b));
}

/// History -> reach contributed by `player`'s own choices under `strategy`.
/// A mixture's reach is the weight-averaged reach of its components.
inline std::vector<double> realization_reach(const GameTree& tree,
                                             const PopulationStrategy& strategy, int player) {
  if (auto* m = std::get_if<CheckpointMixture>(&strategy.variant())) {
    std::vector<double> out(tree.num_nodes(), 0.0);
    for (std::size_t c = 0; c < m->components.size(); ++c) {
      auto r = leaf_realization_reach(tree, player, m->components[c]);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += m->weights[c] * r[i];
    }
    return out;
  }
  return std::visit(
      [&](const auto& x) -> std::vector<double> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CheckpointMixture>) {
          return {};
        } else {
          return leaf_realization_reach(tree, player, LeafStrategy(x));
        }
      },
      strategy.variant());
}

/// Restriction of a node-indexed vector to terminal nodes (terminal order).
inline std::vector<double> at_terminals(const GameTree& tree, std::span<const double> per_node) {
  std::vector<double> out;
  out.reserve(tree.num_terminals());
  for (int z : tree.terminals()) out.push_back(per_node[static_cast<std::size_t>(z)]);
  return out;
}

/// Collapses a mixture of behavior policies into one outcome-equivalent
/// behavior policy by realization-plan weighting. Infosets that no component
/// reaches fall back to uniform.
inline BehaviorPolicy collapse_mixture_to_behavior(const GameTree& tree, int player,
                                                   const CheckpointMixture& mixture) {
  std::vector<double> num(tree.num_slots(player), 0.0);
  std::vector<double> den(tree.infosets(player).size(), 0.0);
  for (std::size_t c = 0; c < mixture.components.size(); ++c) {
    const auto* b = std::get_if<BehaviorPolicy>(&mixture.components[c]);
    if (b == nullptr) throw ParameterError("collapse: component is not a behavior policy");
    TreePolicy pol = TreePolicy::compile(tree, player, *b);
    auto reach = realization_reach(pol);
    const auto& sets = tree.infosets(player);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      // Under perfect recall the own reach is identical across an infoset.
      const double w = mixture.weights[c] * reach[static_cast<std::size_t>(sets[s].nodes.front())];
      den[s] += w;
      auto probs = pol.probs(sets[s]);
      for (std::size_t a = 0; a < probs.size(); ++a) {
        num[static_cast<std::size_t>(sets[s].offset) + a] += w * probs[a];
      }
    }
  }
  BehaviorPolicy::Table out;
  const auto& sets = tree.infosets(player);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::size_t n = sets[s].actions.size();
    std::vector<double> probs(n);
    if (den[s] > 0.0) {
      for (std::size_t a = 0; a < n; ++a) probs[a] = num[static_cast<std::size_t>(sets[s].offset) + a] / den[s];
    } else {
      probs = uniform_vector(n);
    }
    out.emplace(sets[s].key, std::move(probs));
  }
  return BehaviorPolicy(std::move(out));
}

}  // namespace sppsro
