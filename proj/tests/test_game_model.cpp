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


#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sppsro/sppsro.hpp"

namespace sppsro {
namespace {

const NormalFormGame kRps = zoo::make_generalized_rps(3);

oracle::KuhnPolicy as_kuhn(const BehaviorPolicy& b) {
  oracle::KuhnPolicy out;
  for (const auto& [key, probs] : b.table()) out[key] = {probs[0], probs[1]};
  return out;
}

TreePolicy random_policy(const GameTree& tree, int player, Rng& rng) {
  TreePolicy p(tree, player);
  for (const auto& s : tree.infosets(player)) {
    auto probs = p.probs(s);
    double sum = 0.0;
    for (double& x : probs) sum += (x = uniform01(rng) + 1e-3);
    for (double& x : probs) x /= sum;
  }
  return p;
}

// -- Normal form ----------------------------------------------------------------

TEST(NormalFormGame, RejectsMalformedShapes) {
  EXPECT_THROW(NormalFormGame(0, 2, {}), ShapeError);
  EXPECT_THROW(NormalFormGame(2, 2, {1, 2, 3}), ShapeError);
  EXPECT_THROW(NormalFormGame(1, 1, {std::numeric_limits<double>::infinity()}), NumericError);
  EXPECT_THROW(NormalFormGame::from_rows({{1, 2}, {3}}), ShapeError);
}

TEST(NormalFormGame, ColumnPayoffIsNegatedRowPayoff) {
  const auto g = zoo::make_random_uniform(4, 5, 11);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(g.payoff(1, i, j), -g.payoff(0, i, j));
}

TEST(ExpectedValue, RockAgainstPaperLoses) {
  EXPECT_EQ(expected_value_nfg(kRps, MixedStrategy::pure(3, 0), MixedStrategy::pure(3, 1)), -1.0);
}

TEST(ExpectedValue, UniformRpsIsZero) {
  EXPECT_NEAR(expected_value_nfg(kRps, MixedStrategy::uniform(3), MixedStrategy::uniform(3)), 0.0, 1e-15);
}

TEST(ExpectedValue, UniformRowAgainstFirstColumnIsColumnMean) {
  const auto g = zoo::make_random_uniform(4, 4, 7);
  double mean = 0.0;
  for (std::size_t i = 0; i < 4; ++i) mean += g.row_payoff(i, 0) / 4.0;
  EXPECT_NEAR(expected_value_nfg(g, MixedStrategy::uniform(4), MixedStrategy::pure(4, 0)), mean, 1e-15);
}

TEST(ExpectedValue, RejectsWrongLength) {
  EXPECT_THROW(expected_value_nfg(kRps, MixedStrategy::uniform(2), MixedStrategy::uniform(3)), ShapeError);
}

TEST(ExpectedValue, RoleSwapNegates) {
  Rng rng = make_rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = zoo::make_random_uniform(3 + trial % 4, 2 + trial % 5, static_cast<std::uint64_t>(trial));
    std::vector<double> x(g.rows()), y(g.cols());
    double sx = 0, sy = 0;
    for (double& v : x) sx += (v = uniform01(rng));
    for (double& v : y) sy += (v = uniform01(rng));
    for (double& v : x) v /= sx;
    for (double& v : y) v /= sy;
    EXPECT_NEAR(expected_value_nfg(g, x, y), -expected_value_nfg(g.role_swapped(), y, x), 1e-12);
  }
}

TEST(MatrixText, RoundTripsExactly) {
  const auto g = zoo::make_random_uniform(5, 3, 42);
  std::stringstream s;
  write_nfg(s, g);
  const auto back = read_nfg(s);
  ASSERT_EQ(back.rows(), 5u);
  ASSERT_EQ(back.cols(), 3u);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(back.row_payoff(i, j), g.row_payoff(i, j));
}

TEST(MatrixText, RejectsRaggedAndGarbage) {
  std::stringstream ragged("1 2\n3\n");
  EXPECT_THROW(read_nfg(ragged), ShapeError);
  std::stringstream garbage("1 x\n");
  EXPECT_THROW(read_nfg(garbage), ShapeError);
  std::stringstream empty("# nothing\n\n");
  EXPECT_THROW(read_nfg(empty), ShapeError);
}

// -- Behavior policies ----------------------------------------------------------

TEST(BehaviorPolicy, LazyInsertionIsUniform) {
  BehaviorPolicy p;
  EXPECT_FALSE(p.contains("x"));
  EXPECT_EQ(p.get_or_uniform("x", 4), std::vector<double>(4, 0.25));
  EXPECT_TRUE(p.contains("x"));
  EXPECT_THROW((void)p.at("y"), MissingPolicyError);
}

TEST(TreePolicy, CompileRequiresEveryInfoset) {
  GameTree tree{zoo::KuhnPoker()};
  auto b = TreePolicy::uniform(tree, 0).to_behavior();
  EXPECT_EQ(TreePolicy::compile(tree, 0, b), TreePolicy::uniform(tree, 0));
  BehaviorPolicy partial;
  partial.set("J:", {0.5, 0.5});
  EXPECT_THROW(TreePolicy::compile(tree, 0, partial), MissingPolicyError);
  b.set("J:", {1.0});
  EXPECT_THROW(TreePolicy::compile(tree, 0, b), ShapeError);
}

// -- Realization reach ------------------------------------------------------------

TEST(RealizationReach, RootIsOne) {
  GameTree tree{zoo::KuhnPoker()};
  EXPECT_EQ(realization_reach(TreePolicy::uniform(tree, 0))[0], 1.0);
}

TEST(RealizationReach, DegenerateMixtureMatchesComponent) {
  GameTree tree{zoo::KuhnPoker()};
  Rng rng = make_rng(1);
  const PopulationStrategy leaf(random_policy(tree, 0, rng).to_behavior());
  const std::vector<double> w{1.0};
  const auto mix = PopulationStrategy::mixture(w, std::span(&leaf, 1));
  EXPECT_EQ(realization_reach(tree, mix, 0), realization_reach(tree, leaf, 0));
}

TEST(RealizationReach, HalfBetHalfPassMixture) {
  GameTree tree{zoo::KuhnPoker()};
  TreePolicy always_bet(tree, 0), always_pass(tree, 0);
  for (const auto& s : tree.infosets(0)) {
    always_bet.probs(s)[1] = 1.0;
    always_pass.probs(s)[0] = 1.0;
  }
  const std::vector<PopulationStrategy> parts{always_bet.to_behavior(), always_pass.to_behavior()};
  const std::vector<double> w{0.5, 0.5};
  const auto reach = realization_reach(tree, PopulationStrategy::mixture(w, parts), 0);
  const auto& first = tree.infosets(0).front();
  ASSERT_TRUE(first.key.ends_with(":"));
  for (int h : first.nodes) {
    EXPECT_DOUBLE_EQ(reach[static_cast<std::size_t>(tree.child(h, 1))], 0.5);
    EXPECT_DOUBLE_EQ(reach[static_cast<std::size_t>(tree.child(h, 0))], 0.5);
  }
}

// -- Mixture collapse -------------------------------------------------------------

TEST(CollapseMixture, IdenticalComponentsGiveThatPolicy) {
  GameTree tree{zoo::KuhnPoker()};
  Rng rng = make_rng(2);
  const auto b = random_policy(tree, 1, rng).to_behavior();
  CheckpointMixture m{{0.3, 0.7}, {b, b}};
  const auto out = collapse_mixture_to_behavior(tree, 1, m);
  for (const auto& [key, probs] : b.table()) {
    for (std::size_t a = 0; a < probs.size(); ++a) EXPECT_NEAR(out.at(key)[a], probs[a], 1e-15);
  }
}

TEST(CollapseMixture, OneShotMatrixGameMixesAtTheRoot) {
  const auto game = zoo::make_one_shot(zoo::make_generalized_rps(5));
  GameTree tree(*game);
  const auto pure = [&](std::size_t a) {
    TreePolicy p(tree, 0);
    p.probs(0)[a] = 1.0;
    return p.to_behavior();
  };
  CheckpointMixture m{{0.5, 0.5}, {pure(0), pure(1)}};
  const auto out = collapse_mixture_to_behavior(tree, 0, m);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.table().begin()->second, (std::vector<double>{0.5, 0.5, 0.0, 0.0, 0.0}));
}

TEST(CollapseMixture, UnreachedInfosetsFallBackToUniform) {
  GameTree tree{zoo::KuhnPoker()};
  TreePolicy bet(tree, 0);
  for (const auto& s : tree.infosets(0)) bet.probs(s)[1] = 1.0;
  CheckpointMixture m{{1.0}, {bet.to_behavior()}};
  const auto out = collapse_mixture_to_behavior(tree, 0, m);
  EXPECT_EQ(out.at("K:pb"), (std::vector<double>{0.5, 0.5}));  // never reached after an opening bet
}

TEST(CollapseMixture, OutcomeEquivalentAgainstFixedOpponent) {
  GameTree tree{zoo::KuhnPoker()};
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int player = trial % 2;
    CheckpointMixture m;
    const int parts = 2 + trial % 4;
    double sum = 0.0;
    for (int c = 0; c < parts; ++c) {
      m.components.emplace_back(random_policy(tree, player, rng).to_behavior());
      m.weights.push_back(uniform01(rng) + 0.05);
      sum += m.weights.back();
    }
    for (double& w : m.weights) w /= sum;
    const auto opp = as_kuhn(random_policy(tree, 1 - player, rng).to_behavior());
    auto value = [&](const oracle::KuhnPolicy& mine) {
      return player == 0 ? oracle::kuhn_ev(mine, opp) : oracle::kuhn_ev(opp, mine);
    };
    double mixed = 0.0;
    for (int c = 0; c < parts; ++c) {
      mixed += m.weights[static_cast<std::size_t>(c)] *
               value(as_kuhn(std::get<BehaviorPolicy>(m.components[static_cast<std::size_t>(c)])));
    }
    EXPECT_NEAR(value(as_kuhn(collapse_mixture_to_behavior(tree, player, m))), mixed, 1e-12);
  }
}

TEST(PopulationStrategy, MixtureFlattensAndValidates) {
  const std::vector<PopulationStrategy> inner{PureStrategy{0}, PureStrategy{1}};
  const std::vector<double> half{0.5, 0.5};
  const std::vector<PopulationStrategy> outer{PopulationStrategy::mixture(half, inner), PureStrategy{2}};
  const auto m = PopulationStrategy::mixture(half, outer);
  const auto& cm = std::get<CheckpointMixture>(m.variant());
  EXPECT_EQ(cm.components.size(), 3u);
  EXPECT_EQ(to_mixed(m, 3), (std::vector<double>{0.25, 0.25, 0.5}));
  const std::vector<double> bad{0.7, 0.7};
  EXPECT_THROW(PopulationStrategy::mixture(bad, inner), ParameterError);
  GameTree tree{zoo::KuhnPoker()};
  const std::vector<PopulationStrategy> mixed_kinds{PureStrategy{0}, TreePolicy::uniform(tree, 0).to_behavior()};
  EXPECT_THROW(PopulationStrategy::mixture(half, mixed_kinds), ParameterError);
}

// -- Validator ----------------------------------------------------------------------

TEST(Validator, AcceptsShippedGames) {
  EXPECT_TRUE(validate_game(zoo::KuhnPoker()).ok());
  EXPECT_TRUE(validate_game(zoo::LeducPoker()).ok());
  EXPECT_TRUE(validate_game(*zoo::make_repeated_rps(2)).ok());
}

// Player 0 moves twice; the second decision forgets the first move.
class ForgetfulGame final : public ExtensiveGame {
 public:
  class State final : public GameState {
   public:
    int current_player() const override { return moves_.size() < 2 ? 0 : kTerminalPlayer; }
    std::vector<int> legal_actions() const override { return {0, 1}; }
    std::string infoset_key() const override { return moves_.empty() ? "start" : "later"; }
    std::array<double, 2> returns() const override {
      const double v = moves_[0] == moves_[1] ? 1.0 : -1.0;
      return {v, nonzero_sum ? v : -v};
    }
    std::unique_ptr<GameState> child(int a) const override {
      auto s = std::make_unique<State>(*this);
      s->moves_.push_back(a);
      return s;
    }
    bool nonzero_sum = false;

   private:
    std::vector<int> moves_;
  };
  explicit ForgetfulGame(bool nonzero_sum = false) : nonzero_sum_(nonzero_sum) {}
  std::string name() const override { return "forgetful"; }
  std::unique_ptr<GameState> initial_state() const override {
    auto s = std::make_unique<State>();
    s->nonzero_sum = nonzero_sum_;
    return s;
  }
  int max_depth() const override { return 2; }
  std::pair<double, double> payoff_range() const override { return {-1.0, 1.0}; }

 private:
  bool nonzero_sum_;
};

TEST(Validator, RejectsImperfectRecall) {
  const auto report = validate_game(ForgetfulGame());
  ASSERT_FALSE(report.ok());
  EXPECT_NE(report.errors.front().find("perfect recall"), std::string::npos);
}

TEST(Validator, RejectsNonZeroSumTerminals) {
  const auto report = validate_game(ForgetfulGame(true));
  bool found = false;
  for (const auto& e : report.errors) found = found || e.find("zero-sum") != std::string::npos;
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace sppsro
