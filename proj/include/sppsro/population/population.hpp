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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/metasolvers/no_regret.hpp"
#include "sppsro/population/config.hpp"

namespace sppsro {

enum class Provenance { kInitial, kBeta, kNuBar, kNuLast };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kInitial: return "initial";
    case Provenance::kBeta: return "beta";
    case Provenance::kNuBar: return "nu_bar";
    case Provenance::kNuLast: return "nu_last";
  }
  return "?";
}

/// Per-player append-only strategy lists. Indices never move.
class Population {
 public:
  void append(int player, PopulationStrategy s, Provenance tag) {
    members_[idx(player)].push_back(std::move(s));
    tags_[idx(player)].push_back(tag);
  }

  std::size_t size(int player) const { return members_[idx(player)].size(); }
  std::span<const PopulationStrategy> strategies(int player) const { return members_[idx(player)]; }
  const PopulationStrategy& at(int player, std::size_t k) const { return members_[idx(player)].at(k); }
  Provenance provenance(int player, std::size_t k) const { return tags_[idx(player)].at(k); }

 private:
  static std::size_t idx(int player) {
    if (player != 0 && player != 1) throw ParameterError("player must be 0 or 1");
    return static_cast<std::size_t>(player);
  }
  std::array<std::vector<PopulationStrategy>, 2> members_;
  std::array<std::vector<Provenance>, 2> tags_;
};

/// One row of experiment output.
struct IterationRecord {
  std::string algorithm;
  std::string game;
  std::uint64_t seed = 0;
  int iteration = 0;
  std::int64_t cumulative_episodes = 0;
  std::array<std::size_t, 2> population_size{0, 0};
  double exploitability = 0.0;
  std::int64_t wall_ms = 0;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

/// What one population iteration reports: the restricted distributions
/// (padded to the post-append populations) and their exploitability.
struct IterationOutcome {
  std::array<std::vector<double>, 2> distribution;
  double exploitability = 0.0;
  std::int64_t episodes = 0;
};

/// MWU or Exp3 behind one interface. `update` takes the full payoff vector;
/// Exp3 samples an arm and only looks at that entry.
class RegretLearner {
 public:
  RegretLearner(const MetasolverSettings& s, std::size_t arms, std::pair<double, double> reward_range)
      : state_(make(s, arms, reward_range)) {}

  std::size_t arms() const {
    return std::visit([](const auto& x) { return x.arms(); }, state_);
  }
  std::vector<double> distribution() const {
    return std::visit([](const auto& x) { return x.distribution(); }, state_);
  }
  std::vector<double> time_average() const {
    return std::visit([](const auto& x) { return x.time_average(); }, state_);
  }

  void update(std::span<const double> payoffs, Rng& rng) {
    if (auto* mwu = std::get_if<MwuState>(&state_)) {
      mwu->update(payoffs);
    } else {
      auto& exp3 = std::get<Exp3State>(state_);
      if (payoffs.size() != exp3.arms()) throw ShapeError("exp3: payoff vector has wrong length");
      const std::size_t arm = exp3.sample(rng);
      exp3.update(arm, payoffs[arm]);
    }
  }

 private:
  static std::variant<MwuState, Exp3State> make(const MetasolverSettings& s, std::size_t arms,
                                                std::pair<double, double> range) {
    if (s.kind == MetasolverKind::kExp3) return Exp3State(arms, s.exp3_lr, s.exp3_gamma, range);
    return MwuState(arms, s.mwu_lr);
  }
  std::variant<MwuState, Exp3State> state_;
};

/// Running realization-weighted average of behavior policies; equivalent to
/// collapse_mixture_to_behavior on the (weighted) checkpoint mixture but
/// without storing the checkpoints.
class RealizationAverager {
 public:
  RealizationAverager(const GameTree& tree, int player)
      : tree_(&tree), player_(player), num_(tree.num_slots(player), 0.0), den_(tree.infosets(player).size(), 0.0) {}

  std::size_t count() const { return count_; }

  void add(const TreePolicy& policy, double weight = 1.0) {
    if (weight <= 0.0) return;
    const auto reach = realization_reach(policy);
    const auto& sets = tree_->infosets(player_);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const double w = weight * reach[static_cast<std::size_t>(sets[s].nodes.front())];
      if (w == 0.0) continue;
      den_[s] += w;
      const auto probs = policy.probs(sets[s]);
      for (std::size_t a = 0; a < probs.size(); ++a) num_[static_cast<std::size_t>(sets[s].offset) + a] += w * probs[a];
    }
    ++count_;
  }

  TreePolicy result() const {
    TreePolicy out(*tree_, player_);
    const auto& sets = tree_->infosets(player_);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      auto probs = out.probs(sets[s]);
      for (std::size_t a = 0; a < probs.size(); ++a) {
        probs[a] = den_[s] > 0.0 ? num_[static_cast<std::size_t>(sets[s].offset) + a] / den_[s]
                                 : 1.0 / static_cast<double>(probs.size());
      }
    }
    return out;
  }

 private:
  const GameTree* tree_;
  int player_;
  std::vector<double> num_;
  std::vector<double> den_;
  std::size_t count_ = 0;
};

/// Sizes of `batches` near-equal chunks of `total` (earlier chunks smaller).
inline std::int64_t batch_share(std::int64_t total, int batches, int b) {
  return total * (b + 1) / batches - total * b / batches;
}

/// Restricted distribution over the pre-iteration population plus optional
/// new-strategy slot, laid out over the post-append population
/// [old..., beta, (nu)]; beta gets zero mass.
inline std::vector<double> pad_distribution(std::span<const double> dist, std::size_t old_size, bool has_nu) {
  std::vector<double> out(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(old_size));
  out.push_back(0.0);
  if (has_nu) out.push_back(dist[old_size]);
  return out;
}

}  // namespace sppsro
