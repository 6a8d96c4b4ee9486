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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sppsro/sppsro.hpp"

namespace sppsro {
namespace {

oracle::Matrix as_matrix(const NormalFormGame& g) {
  oracle::Matrix m(g.rows(), std::vector<double>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) m[i][j] = g.row_payoff(i, j);
  return m;
}

// -- MWU -------------------------------------------------------------------------

TEST(Mwu, EqualPayoffsLeaveDistributionUnchanged) {
  MwuState s(4, 0.1);
  s.update(std::vector<double>{0.3, 0.3, 0.3, 0.3});
  for (double p : s.distribution()) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(Mwu, TwoArmClosedForm) {
  const auto s = mwu_update(MwuState(2, 0.1), std::vector<double>{1.0, 0.0});
  const double e = std::exp(0.1);
  EXPECT_NEAR(s.distribution()[0], e / (e + 1.0), 1e-15);
  EXPECT_NEAR(s.distribution()[0], 0.525, 5e-4);
  EXPECT_NEAR(s.distribution()[1], 0.475, 5e-4);
}

TEST(Mwu, ShiftInvariant) {
  Rng rng = make_rng(1);
  MwuState a(6, 0.1), b(6, 0.1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> g(6), h(6);
    for (std::size_t k = 0; k < 6; ++k) {
      g[k] = uniform01(rng);
      h[k] = g[k] + 3.5;
    }
    a.update(g);
    b.update(h);
  }
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(a.distribution()[k], b.distribution()[k], 1e-12);
}

TEST(Mwu, TimeAverageIsMeanOfVisitedDistributions) {
  Rng rng = make_rng(2);
  MwuState s(3, 0.5);
  std::vector<double> sum(3, 0.0);
  for (int t = 0; t < 25; ++t) {
    s.update(std::vector<double>{uniform01(rng), uniform01(rng), uniform01(rng)});
    const auto p = s.distribution();
    for (std::size_t k = 0; k < 3; ++k) sum[k] += p[k];
  }
  for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(s.time_average()[k], sum[k] / 25.0);
  EXPECT_EQ(MwuState(3).time_average(), uniform_vector(3));
}

TEST(Mwu, RegretWithinTheoreticalBound) {
  for (std::size_t k : {2u, 10u, 50u}) {
    Rng rng = make_rng(k);
    constexpr int kSteps = 2000;
    const double lr = 0.1;
    MwuState s(k, lr);
    std::vector<double> totals(k, 0.0);
    double earned = 0.0;
    for (int t = 0; t < kSteps; ++t) {
      std::vector<double> g(k);
      for (std::size_t a = 0; a < k; ++a) g[a] = uniform01(rng) * (a == t % k ? 1.0 : 0.6);
      earned += dot(s.distribution(), g);
      for (std::size_t a = 0; a < k; ++a) totals[a] += g[a];
      s.update(g);
    }
    const double best = *std::max_element(totals.begin(), totals.end());
    const double bound = std::log(static_cast<double>(k)) / (lr * kSteps) + lr / 2.0;
    EXPECT_LE((best - earned) / kSteps, bound) << "K=" << k;
  }
}

TEST(Mwu, RejectsBadInput) {
  EXPECT_THROW(MwuState(0), ParameterError);
  MwuState s(2);
  EXPECT_THROW(s.update(std::vector<double>{1.0}), ShapeError);
  EXPECT_THROW(s.update(std::vector<double>{NAN, 0.0}), NumericError);
}

// -- Exp3 ------------------------------------------------------------------------

TEST(Exp3, FullExplorationIsUniform) {
  Exp3State s(4, 1.0, 1.0, {0.0, 1.0});
  for (int t = 0; t < 10; ++t) s.update(static_cast<std::size_t>(t % 2), 1.0);
  for (double p : s.distribution()) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Exp3, SingleArmStaysCertain) {
  auto s = Exp3State(1, 1.0, 0.1, {0.0, 1.0});
  for (int t = 0; t < 5; ++t) s = exp3_update(s, 0, 0.7);
  EXPECT_EQ(s.distribution(), std::vector<double>{1.0});
}

TEST(Exp3, ClampsRewardsOutsideRange) {
  Exp3State s(2, 1.0, 0.1, {-1.0, 1.0});
  s.update(0, 5.0);
  EXPECT_EQ(s.clamped_rewards(), 1u);
  EXPECT_THROW(Exp3State(2, 1.0, 1.5, {0.0, 1.0}), ParameterError);
  EXPECT_THROW(Exp3State(2, 1.0, 0.1, {1.0, 1.0}), ParameterError);
}

TEST(Exp3, SublinearRegretOnShiftingBernoulliArms) {
  constexpr int kSteps = 100000;
  Rng env = make_rng(100);
  // Fixed in advance: arm 0 is better for 60% of the run, arm 1 afterwards.
  std::vector<std::array<double, 2>> seq(kSteps);
  for (int t = 0; t < kSteps; ++t) {
    const bool early = t < kSteps * 6 / 10;
    seq[static_cast<std::size_t>(t)] = {uniform01(env) < (early ? 0.7 : 0.3) ? 1.0 : 0.0,
                                        uniform01(env) < (early ? 0.4 : 0.6) ? 1.0 : 0.0};
  }
  Exp3State s(2, 1.0, 0.1, {0.0, 1.0});
  Rng rng = make_rng(101);
  double earned = 0.0, total0 = 0.0, total1 = 0.0;
  for (const auto& g : seq) {
    const auto arm = s.sample(rng);
    earned += g[arm];
    total0 += g[0];
    total1 += g[1];
    s.update(arm, g[arm]);
  }
  EXPECT_LE((std::max(total0, total1) - earned) / kSteps, 0.05);
}

// -- Exact Nash ------------------------------------------------------------------

TEST(ExactNash, RockPaperScissors) {
  const auto sol = exact_nash_zero_sum(zoo::make_generalized_rps(3));
  for (double p : sol.row.probs()) EXPECT_NEAR(p, 1.0 / 3.0, 1e-9);
  for (double p : sol.col.probs()) EXPECT_NEAR(p, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(sol.value, 0.0, 1e-12);
}

TEST(ExactNash, MatchingPennies) {
  const auto sol = exact_nash_zero_sum(zoo::make_matching_pennies());
  EXPECT_NEAR(sol.row.probs()[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.col.probs()[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.value, 0.0, 1e-12);
}

TEST(ExactNash, BlottoHasValueZero) {
  const auto g = zoo::make_blotto(5, 3);
  const auto sol = exact_nash_zero_sum(g);
  EXPECT_NEAR(sol.value, 0.0, 1e-9);
  EXPECT_LE(eval::exploitability(g, sol.row, sol.col), 1e-6);
}

TEST(ExactNash, CertificateOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = zoo::make_random_uniform(2 + static_cast<int>(seed % 12), 2 + static_cast<int>(seed % 9), seed);
    const auto sol = exact_nash_zero_sum(g);
    const auto m = as_matrix(g);
    EXPECT_LE(oracle::best_row(m, sol.col.probs()), sol.value + 1e-9);
    EXPECT_LE(oracle::best_col(m, sol.row.probs()), -sol.value + 1e-9);
    EXPECT_NEAR(oracle::ev(m, sol.row.probs(), sol.col.probs()), sol.value, 1e-9);
  }
}

TEST(ExactNash, DegenerateGames) {
  const auto zeros = NormalFormGame(3, 4, std::vector<double>(12, 0.0));
  EXPECT_NEAR(exact_nash_zero_sum(zeros).value, 0.0, 1e-12);
  const auto single = NormalFormGame(1, 1, {2.5});
  const auto s = exact_nash_zero_sum(single);
  EXPECT_NEAR(s.value, 2.5, 1e-12);
  EXPECT_EQ(s.row.probs(), std::vector<double>{1.0});
  // Row 1 strictly dominates row 0.
  const auto dominated = NormalFormGame::from_rows({{0, 0}, {1, 2}});
  const auto d = exact_nash_zero_sum(dominated);
  EXPECT_NEAR(d.row.probs()[1], 1.0, 1e-12);
  EXPECT_NEAR(d.value, 1.0, 1e-12);
}

TEST(ExactNash, KuhnInducedNormalForm) {
  const auto g = zoo::make_normal_form(zoo::GameSpec::parse("kuhn_nfg"));
  const auto sol = exact_nash_zero_sum(g);
  EXPECT_NEAR(sol.value, -1.0 / 18.0, 1e-9);
  EXPECT_LE(eval::exploitability(g, sol.row, sol.col), 1e-6);
}

// -- Fictitious play -----------------------------------------------------------------

TEST(FictitiousPlay, RpsAverageIsNearlyUnexploitable) {
  const auto g = zoo::make_generalized_rps(3);
  const auto [x, y] = fictitious_play(g, 2000);
  EXPECT_LE(eval::exploitability(g, x, y), 0.05);
}

TEST(FictitiousPlay, OneByOneIsImmediate) {
  const auto [x, y] = fictitious_play(NormalFormGame(1, 1, {0.0}), 1);
  EXPECT_EQ(x.probs(), std::vector<double>{1.0});
  EXPECT_EQ(y.probs(), std::vector<double>{1.0});
}

TEST(FictitiousPlay, MatchingPenniesConverges) {
  const auto [x, y] = fictitious_play(zoo::make_matching_pennies(), 10000);
  EXPECT_NEAR(x.probs()[0], 0.5, 0.02);
  EXPECT_NEAR(y.probs()[0], 0.5, 0.02);
}

}  // namespace
}  // namespace sppsro
