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
#include <memory>
#include <string>
#include <vector>

#include "sppsro/game/extensive.hpp"

namespace sppsro::zoo {

/// Two-player Leduc poker.
///
/// Six cards (J, Q, K in two suits; card id c has rank c / 2). Each player
/// antes 1 and receives one private card; a public card is revealed after the
/// first betting round. Raises are 2 in round one and 4 in round two, at most
/// two raises per round. Player 0 opens both rounds. Folding is only legal
/// when facing a bet. At showdown a pair with the public card wins, otherwise
/// the higher rank wins; equal ranks split.
///
/// Actions: 0 = fold, 1 = check/call, 2 = bet/raise.
/// Infoset key: "<own rank>[<public rank>]:<round 1 actions>[/<round 2 actions>]"
/// with actions written f/c/r, e.g. "QK:rc/cr" holds a Queen, sees a public
/// King and faces a raise after checking in round two.
///
/// Every distinct history (chance, decision and terminal) is one state; under
/// that convention the tree has 9457 states.
class LeducPoker final : public ExtensiveGame {
 public:
  class State final : public GameState {
   public:
    int current_player() const override {
      if (private_.size() < 2) return kChancePlayer;
      if (folded_ >= 0) return kTerminalPlayer;
      if (round_ == 1 && round_over_) return kChancePlayer;
      if (round_ == 2 && round_over_) return kTerminalPlayer;
      return to_act_;
    }

    std::vector<int> legal_actions() const override {
      if (current_player() == kChancePlayer) {
        std::vector<int> out;
        for (const auto& [a, p] : chance_outcomes()) out.push_back(a);
        return out;
      }
      std::vector<int> out;
      if (stake_[to_act_] < stake_[1 - to_act_]) out.push_back(0);
      out.push_back(1);
      if (raises_ < 2) out.push_back(2);
      return out;
    }

    std::vector<std::pair<int, double>> chance_outcomes() const override {
      std::vector<int> deck;
      for (int c = 0; c < 6; ++c) {
        bool used = false;
        for (int p : private_) used |= p == c;
        if (!used) deck.push_back(c);
      }
      std::vector<std::pair<int, double>> out;
      for (int c : deck) out.emplace_back(c, 1.0 / static_cast<double>(deck.size()));
      return out;
    }

    std::string infoset_key() const override {
      static constexpr char kRank[] = {'J', 'Q', 'K'};
      std::string key(1, kRank[private_[static_cast<std::size_t>(to_act_)] / 2]);
      if (public_ >= 0) key += kRank[public_ / 2];
      key += ':';
      key += actions_[0];
      if (round_ == 2) {
        key += '/';
        key += actions_[1];
      }
      return key;
    }

    std::array<double, 2> returns() const override {
      double p0;
      if (folded_ >= 0) {
        p0 = folded_ == 0 ? -stake_[0] : stake_[1];
      } else {
        const int w = winner();
        p0 = w == 0 ? stake_[1] : (w == 1 ? -stake_[0] : 0.0);
      }
      return {p0, -p0};
    }

    std::unique_ptr<GameState> child(int action) const override {
      auto s = std::make_unique<State>(*this);
      if (private_.size() < 2) {
        s->private_.push_back(action);
        return s;
      }
      if (current_player() == kChancePlayer) {
        s->public_ = action;
        s->round_ = 2;
        s->round_over_ = false;
        s->raises_ = 0;
        s->acted_in_round_ = 0;
        s->to_act_ = 0;
        return s;
      }
      const int me = to_act_;
      std::string& hist = s->actions_[static_cast<std::size_t>(round_ - 1)];
      if (action == 0) {
        hist += 'f';
        s->folded_ = me;
        return s;
      }
      if (action == 1) {
        hist += 'c';
        s->stake_[me] = s->stake_[1 - me];
        s->acted_in_round_ += 1;
        // A call of a bet, or the second check, closes the round.
        if (s->acted_in_round_ >= 2) s->round_over_ = true;
      } else {
        hist += 'r';
        s->stake_[me] = s->stake_[1 - me] + (round_ == 1 ? 2 : 4);
        s->raises_ += 1;
        s->acted_in_round_ += 1;
      }
      s->to_act_ = 1 - me;
      return s;
    }

    std::string to_string() const override {
      std::string s;
      for (int c : private_) s += std::to_string(c) + " ";
      if (public_ >= 0) s += "pub=" + std::to_string(public_) + " ";
      return s + actions_[0] + "/" + actions_[1];
    }

   private:
    int winner() const {
      const int r0 = private_[0] / 2, r1 = private_[1] / 2, rp = public_ / 2;
      if (r0 == rp) return 0;
      if (r1 == rp) return 1;
      if (r0 > r1) return 0;
      if (r1 > r0) return 1;
      return -1;
    }

    std::vector<int> private_;
    int public_ = -1;
    int round_ = 1;
    bool round_over_ = false;
    int raises_ = 0;
    int acted_in_round_ = 0;
    int to_act_ = 0;
    int folded_ = -1;
    std::array<double, 2> stake_{1.0, 1.0};
    std::array<std::string, 2> actions_;
  };

  std::string name() const override { return "leduc_poker"; }
  std::unique_ptr<GameState> initial_state() const override { return std::make_unique<State>(); }
  int max_depth() const override { return 3 + 2 * 4; }
  std::pair<double, double> payoff_range() const override { return {-13.0, 13.0}; }
};

}  // namespace sppsro::zoo
