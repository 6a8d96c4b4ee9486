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
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sppsro/common.hpp"

namespace sppsro {

/// State-walker contract implemented by every extensive-form game.
///
/// A state is a history h. `infoset_key()` is the acting player's canonical
/// observation/action string s_i(h); two histories with equal keys for the
/// same player must be indistinguishable to that player and share legal
/// actions. Terminal states report per-player returns that sum to zero.
class GameState {
 public:
  virtual ~GameState() = default;

  /// 0, 1, kChancePlayer or kTerminalPlayer.
  virtual int current_player() const = 0;
  bool is_terminal() const { return current_player() == kTerminalPlayer; }
  bool is_chance() const { return current_player() == kChancePlayer; }

  virtual std::vector<int> legal_actions() const = 0;
  /// Only meaningful at chance nodes.
  virtual std::vector<std::pair<int, double>> chance_outcomes() const { return {}; }
  /// Only meaningful at decision nodes.
  virtual std::string infoset_key() const = 0;
  /// Only meaningful at terminal nodes.
  virtual std::array<double, 2> returns() const = 0;

  virtual std::unique_ptr<GameState> child(int action) const = 0;
  virtual std::string to_string() const { return {}; }
};

class ExtensiveGame {
 public:
  virtual ~ExtensiveGame() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<GameState> initial_state() const = 0;
  /// Upper bound on the number of moves (including chance) in any playout.
  virtual int max_depth() const = 0;
  /// Range of player 0's terminal return; used to scale bandit rewards.
  virtual std::pair<double, double> payoff_range() const = 0;
};

/// Fully expanded, immutable game tree. Nodes are numbered in breadth-first
/// order, so every parent precedes its children and the children of a node
/// occupy a contiguous index range.
class GameTree {
 public:
  struct Node {
    int player = kTerminalPlayer;
    int infoset = -1;       // dense per-player index, decision nodes only
    int parent = -1;
    int action = -1;        // action id taken at the parent to reach this node
    int action_index = -1;  // position of `action` in the parent's action list
    int first_child = -1;
    int num_children = 0;
    int depth = 0;
    int terminal = -1;      // dense terminal index
    double chance_prob = 1.0;  // P(this node | parent) when the parent is chance
    double payoff = 0.0;       // player 0's return at terminals
  };

  struct Infoset {
    std::string key;
    int player = 0;
    std::vector<int> actions;
    std::vector<int> nodes;
    int offset = 0;  // start of this infoset's slots in a per-player flat buffer
  };

  explicit GameTree(const ExtensiveGame& game)
      : name_(game.name()), payoff_range_(game.payoff_range()) {
    build(game);
  }

  const std::string& name() const { return name_; }
  std::pair<double, double> payoff_range() const { return payoff_range_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int child(int node_index, int action_index) const {
    return nodes_[static_cast<std::size_t>(node_index)].first_child + action_index;
  }

  const std::vector<Infoset>& infosets(int player) const {
    return infosets_[static_cast<std::size_t>(player)];
  }
  const Infoset& infoset(int player, int index) const {
    return infosets_[static_cast<std::size_t>(player)][static_cast<std::size_t>(index)];
  }
  std::optional<int> find_infoset(int player, const std::string& key) const {
    const auto& m = key_index_[static_cast<std::size_t>(player)];
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }
  /// Number of (infoset, action) slots for a player.
  std::size_t num_slots(int player) const { return slots_[static_cast<std::size_t>(player)]; }

  const std::vector<int>& terminals() const { return terminals_; }
  std::size_t num_terminals() const { return terminals_.size(); }

  /// Product of chance probabilities on the path to each node.
  const std::vector<double>& chance_reach() const { return chance_reach_; }

  int max_depth() const { return max_depth_; }

  /// Raw per-node diagnostics collected while expanding, for the validator.
  struct BuildRecord {
    std::array<double, 2> returns{};
    double chance_sum = 0.0;
    std::vector<int> legal_actions;
  };
  const std::vector<BuildRecord>& build_records() const { return records_; }
  int declared_max_depth() const { return declared_max_depth_; }

 private:
  void build(const ExtensiveGame& game) {
    declared_max_depth_ = game.max_depth();
    std::deque<std::pair<std::unique_ptr<GameState>, int>> queue;
    nodes_.push_back(Node{});
    records_.push_back({});
    queue.emplace_back(game.initial_state(), 0);
    while (!queue.empty()) {
      auto [state, index] = std::move(queue.front());
      queue.pop_front();
      Node& n = nodes_[static_cast<std::size_t>(index)];
      n.player = state->current_player();
      if (n.depth > declared_max_depth_) {
        throw ParameterError(name_ + ": playout exceeds declared depth bound " +
                             std::to_string(declared_max_depth_));
      }
      max_depth_ = std::max(max_depth_, n.depth);
      if (n.player == kTerminalPlayer) {
        auto ret = state->returns();
        records_[static_cast<std::size_t>(index)].returns = ret;
        n.payoff = ret[0];
        n.terminal = static_cast<int>(terminals_.size());
        terminals_.push_back(index);
        continue;
      }
      std::vector<int> actions;
      std::vector<double> probs;
      if (n.player == kChancePlayer) {
        double sum = 0.0;
        for (auto [a, p] : state->chance_outcomes()) {
          actions.push_back(a);
          probs.push_back(p);
          sum += p;
        }
        records_[static_cast<std::size_t>(index)].chance_sum = sum;
      } else {
        actions = state->legal_actions();
        probs.assign(actions.size(), 1.0);
        records_[static_cast<std::size_t>(index)].legal_actions = actions;
        n.infoset = intern_infoset(n.player, state->infoset_key(), actions, index);
      }
      if (actions.empty()) throw ParameterError(name_ + ": non-terminal state without actions");
      const int first = static_cast<int>(nodes_.size());
      const int depth = n.depth + 1;
      n.first_child = first;
      n.num_children = static_cast<int>(actions.size());
      for (std::size_t k = 0; k < actions.size(); ++k) {
        Node c;
        c.parent = index;
        c.action = actions[k];
        c.action_index = static_cast<int>(k);
        c.depth = depth;
        c.chance_prob = probs[k];
        // `n` may dangle after push_back; it is not used below.
        nodes_.push_back(c);
        records_.push_back({});
        queue.emplace_back(state->child(actions[k]), first + static_cast<int>(k));
      }
    }
    chance_reach_.assign(nodes_.size(), 1.0);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      const Node& c = nodes_[i];
      const Node& p = nodes_[static_cast<std::size_t>(c.parent)];
      chance_reach_[i] = chance_reach_[static_cast<std::size_t>(c.parent)] *
                         (p.player == kChancePlayer ? c.chance_prob : 1.0);
    }
    for (int pl = 0; pl < 2; ++pl) {
      int offset = 0;
      for (auto& s : infosets_[static_cast<std::size_t>(pl)]) {
        s.offset = offset;
        offset += static_cast<int>(s.actions.size());
      }
      slots_[static_cast<std::size_t>(pl)] = static_cast<std::size_t>(offset);
    }
  }

  int intern_infoset(int player, const std::string& key, const std::vector<int>& actions,
                     int node_index) {
    if (player < 0 || player > 1) throw ParameterError(name_ + ": invalid acting player");
    auto& m = key_index_[static_cast<std::size_t>(player)];
    auto& sets = infosets_[static_cast<std::size_t>(player)];
    auto [it, inserted] = m.emplace(key, static_cast<int>(sets.size()));
    if (inserted) {
      sets.push_back(Infoset{key, player, actions, {}, 0});
    } else if (sets[static_cast<std::size_t>(it->second)].actions != actions) {
      throw ParameterError(name_ + ": infoset '" + key + "' has inconsistent legal actions");
    }
    sets[static_cast<std::size_t>(it->second)].nodes.push_back(node_index);
    return it->second;
  }

  std::string name_;
  std::pair<double, double> payoff_range_;
  std::vector<Node> nodes_;
  std::vector<BuildRecord> records_;
  std::array<std::vector<Infoset>, 2> infosets_;
  std::array<std::unordered_map<std::string, int>, 2> key_index_;
  std::array<std::size_t, 2> slots_{};
  std::vector<int> terminals_;
  std::vector<double> chance_reach_;
  int max_depth_ = 0;
  int declared_max_depth_ = 0;
};

/// Outcome of a full validation walk.
struct ValidationReport {
  std::size_t histories = 0;
  std::size_t terminals = 0;
  std::array<std::size_t, 2> infosets{};
  int depth = 0;
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
};

/// Walks the whole game and checks the structural invariants: perfect recall,
/// zero-sum terminals, chance distributions, consistent legal actions and the
/// declared depth bound. Never throws for a malformed game; problems are
/// collected in `errors`.
inline ValidationReport validate_game(const ExtensiveGame& game) {
  ValidationReport report;
  std::optional<GameTree> tree;
  try {
    tree.emplace(game);
  } catch (const std::exception& e) {
    report.errors.push_back(e.what());
    return report;
  }
  report.histories = tree->num_nodes();
  report.terminals = tree->num_terminals();
  report.infosets = {tree->infosets(0).size(), tree->infosets(1).size()};
  report.depth = tree->max_depth();

  const auto& recs = tree->build_records();
  for (std::size_t i = 0; i < tree->num_nodes(); ++i) {
    const auto& n = tree->node(static_cast<int>(i));
    if (n.player == kTerminalPlayer) {
      const auto& r = recs[i].returns;
      if (std::abs(r[0] + r[1]) > 1e-9) {
        report.errors.push_back("terminal " + std::to_string(i) + " is not zero-sum");
      }
    } else if (n.player == kChancePlayer) {
      if (std::abs(recs[i].chance_sum - 1.0) > 1e-12) {
        report.errors.push_back("chance node " + std::to_string(i) +
                                " probabilities do not sum to 1");
      }
    }
  }

  // Perfect recall: every history of an infoset must share the acting player's
  // own sequence of (infoset, action) pairs.
  for (int player = 0; player < 2; ++player) {
    std::vector<std::string> own(tree->num_nodes());
    for (std::size_t i = 1; i < tree->num_nodes(); ++i) {
      const auto& c = tree->node(static_cast<int>(i));
      const auto& p = tree->node(c.parent);
      own[i] = own[static_cast<std::size_t>(c.parent)];
      if (p.player == player) {
        own[i] += tree->infoset(player, p.infoset).key;
        own[i] += '\x1f';
        own[i] += std::to_string(c.action);
        own[i] += '\x1e';
      }
    }
    for (const auto& s : tree->infosets(player)) {
      const std::string& ref = own[static_cast<std::size_t>(s.nodes.front())];
      for (int h : s.nodes) {
        if (own[static_cast<std::size_t>(h)] != ref) {
          report.errors.push_back("player " + std::to_string(player) + " infoset '" + s.key +
                                  "' violates perfect recall");
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace sppsro
