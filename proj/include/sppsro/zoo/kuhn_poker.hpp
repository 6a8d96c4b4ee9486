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

namespace sppsro::zoo {

/// Two-player Kuhn poker: cards J, Q, K; ante 1; one bet of size 1.
///
/// Actions: 0 = pass/check/fold, 1 = bet/call. Infoset keys are
/// "<own card>:<betting>", e.g. "K:pb" is holding the King after pass, bet.
/// The tree has 58 histories and 6 infosets per player.
class KuhnPoker final : public ExtensiveGame {
 public:
  class State final : public GameState {
   public:
    int current_player() const override {
      if (cards_.size() < 2) return kChancePlayer;
      if (finished()) return kTerminalPlayer;
      return static_cast<int>(history_.size() % 2);
    }

    std::vector<int> legal_actions() const override {
      if (cards_.size() < 2) {
        std::vector<int> out;
        for (const auto& [a, p] : chance_outcomes()) out.push_back(a);
        return out;
      }
      return {0, 1};
    }

    std::vector<std::pair<int, double>> chance_outcomes() const override {
      std::vector<std::pair<int, double>> out;
      const double p = 1.0 / static_cast<double>(3 - cards_.size());
      for (int c = 0; c < 3; ++c) {
        if (cards_.empty() || cards_.front() != c) out.emplace_back(c, p);
      }
      return out;
    }

    std::string infoset_key() const override {
      static constexpr char kRank[] = {'J', 'Q', 'K'};
      std::string key(1, kRank[cards_[static_cast<std::size_t>(current_player())]]);
      key += ':';
      for (int a : history_) key += a == 0 ? 'p' : 'b';
      return key;
    }

    std::array<double, 2> returns() const override {
      // pp: showdown for 1; bp / pbp: fold; bb / pbb: showdown for 2.
      double p0;
      const std::string h = betting();
      const bool p0_wins = cards_[0] > cards_[1];
      if (h == "pp") {
        p0 = p0_wins ? 1.0 : -1.0;
      } else if (h == "bp") {
        p0 = 1.0;
      } else if (h == "pbp") {
        p0 = -1.0;
      } else {
        p0 = p0_wins ? 2.0 : -2.0;
      }
      return {p0, -p0};
    }

    std::unique_ptr<GameState> child(int action) const override {
      auto s = std::make_unique<State>(*this);
      if (cards_.size() < 2) {
        s->cards_.push_back(action);
      } else {
        s->history_.push_back(action);
      }
      return s;
    }

    std::string to_string() const override {
      std::string s;
      for (int c : cards_) s += std::to_string(c);
      return s + "|" + betting();
    }

   private:
    std::string betting() const {
      std::string h;
      for (int a : history_) h += a == 0 ? 'p' : 'b';
      return h;
    }
    bool finished() const {
      const std::string h = betting();
      return h == "pp" || h == "bp" || h == "bb" || h == "pbp" || h == "pbb";
    }

    std::vector<int> cards_;
    std::vector<int> history_;
  };

  std::string name() const override { return "kuhn_poker"; }
  std::unique_ptr<GameState> initial_state() const override { return std::make_unique<State>(); }
  int max_depth() const override { return 5; }
  std::pair<double, double> payoff_range() const override { return {-2.0, 2.0}; }
};

}  // namespace sppsro::zoo
