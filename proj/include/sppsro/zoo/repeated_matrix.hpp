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

#include <memory>
#include <string>
#include <vector>

#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/zoo/matrix_games.hpp"

namespace sppsro::zoo {

/// A zero-sum matrix stage game repeated `reps` times, made turn-based: in
/// each stage player 0 moves, then player 1 moves without seeing player 0's
/// current choice. Both joint actions are revealed between stages and stage
/// payoffs are summed into the terminal return.
///
/// Infoset key: the sequence of past joint actions, one "<row>.<col>;" per
/// completed stage, e.g. "0.1;2.2;" before the third stage. Both players use
/// the same encoding; policies are per player so keys never collide.
///
/// With reps = 1 this is the matrix game as a one-shot extensive game.
class RepeatedMatrixGame final : public ExtensiveGame {
 public:
  RepeatedMatrixGame(NormalFormGame stage, int reps, std::string name)
      : stage_(std::move(stage)), reps_(reps), name_(std::move(name)) {
    if (reps_ < 1) throw ParameterError("repeated game: reps must be >= 1");
    lo_ = hi_ = 0.0;
    double smin = stage_.data().front(), smax = smin;
    for (double x : stage_.data()) {
      smin = std::min(smin, x);
      smax = std::max(smax, x);
    }
    lo_ = smin * reps_;
    hi_ = smax * reps_;
  }

  class State final : public GameState {
   public:
    explicit State(const RepeatedMatrixGame* game) : game_(game) {}

    int current_player() const override {
      if (static_cast<int>(joint_.size()) == game_->reps_) return kTerminalPlayer;
      return pending_ < 0 ? 0 : 1;
    }
    std::vector<int> legal_actions() const override {
      const auto n = game_->stage_.num_strategies(current_player());
      std::vector<int> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
      return out;
    }
    std::string infoset_key() const override {
      std::string key;
      for (const auto& [r, c] : joint_) {
        key += std::to_string(r);
        key += '.';
        key += std::to_string(c);
        key += ';';
      }
      return key;
    }
    std::array<double, 2> returns() const override {
      double p0 = 0.0;
      for (const auto& [r, c] : joint_) {
        p0 += game_->stage_.row_payoff(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      }
      return {p0, -p0};
    }
    std::unique_ptr<GameState> child(int action) const override {
      auto s = std::make_unique<State>(*this);
      if (pending_ < 0) {
        s->pending_ = action;
      } else {
        s->joint_.emplace_back(pending_, action);
        s->pending_ = -1;
      }
      return s;
    }
    std::string to_string() const override { return infoset_key() + std::to_string(pending_); }

   private:
    const RepeatedMatrixGame* game_;
    std::vector<std::pair<int, int>> joint_;
    int pending_ = -1;
  };

  std::string name() const override { return name_; }
  std::unique_ptr<GameState> initial_state() const override { return std::make_unique<State>(this); }
  int max_depth() const override { return 2 * reps_; }
  std::pair<double, double> payoff_range() const override { return {lo_, hi_}; }

  const NormalFormGame& stage() const { return stage_; }
  int reps() const { return reps_; }

 private:
  NormalFormGame stage_;
  int reps_;
  std::string name_;
  double lo_, hi_;
};

/// Repeated Rock-Paper-Scissors; 4 repetitions give 9841 histories.
inline std::unique_ptr<RepeatedMatrixGame> make_repeated_rps(int reps) {
  if (reps < 1) throw ParameterError("repeated_rps: reps must be >= 1");
  return std::make_unique<RepeatedMatrixGame>(make_generalized_rps(3), reps,
                                              "repeated_rps(" + std::to_string(reps) + ")");
}

/// A matrix game as a one-shot, turn-based extensive game.
inline std::unique_ptr<RepeatedMatrixGame> make_one_shot(const NormalFormGame& game) {
  return std::make_unique<RepeatedMatrixGame>(game, 1, "one_shot");
}

}  // namespace sppsro::zoo
