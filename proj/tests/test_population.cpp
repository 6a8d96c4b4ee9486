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


#include <numeric>

#include <gtest/gtest.h>

#include "sppsro/sppsro.hpp"

namespace sppsro {
namespace {

std::shared_ptr<const NormalFormGame> nfg(const char* spec, std::uint64_t seed = 0) {
  return zoo::make_game(zoo::GameSpec::parse(spec), seed).nfg;
}

std::shared_ptr<const GameTree> efg(const char* spec) { return zoo::make_game(zoo::GameSpec::parse(spec)).tree; }

SolverConfig exact_config(Algorithm a, bool normal_form, int n = 200, int m = 10) {
  auto c = SolverConfig::defaults(a, normal_form);
  c.oracle.kind = OracleKind::kExact;
  c.schedule.n = n;
  c.schedule.m = m;
  return c;
}

SolverConfig tabular_config(Algorithm a, std::int64_t episodes, std::int64_t updates, int batches) {
  auto c = SolverConfig::defaults(a, false);
  c.schedule.episodes_per_iteration = episodes;
  c.schedule.metasolver_updates_per_iteration = updates;
  c.schedule.batches = batches;
  return c;
}

// -- Building blocks ------------------------------------------------------------------

TEST(Population, AppendOnlyWithProvenance) {
  Population pop;
  pop.append(0, PureStrategy{2}, Provenance::kInitial);
  pop.append(0, MixedStrategy({0.5, 0.5, 0.0}), Provenance::kNuBar);
  EXPECT_EQ(pop.size(0), 2u);
  EXPECT_EQ(pop.size(1), 0u);
  EXPECT_EQ(pop.provenance(0, 1), Provenance::kNuBar);
  EXPECT_EQ(to_string(pop.provenance(0, 0)), "initial");
  EXPECT_THROW(pop.append(2, PureStrategy{0}, Provenance::kBeta), ParameterError);
}

TEST(BatchShare, SplitsTotalExactly) {
  for (std::int64_t total : {0, 1, 19800, 799800, 50000}) {
    for (int batches : {1, 7, 600}) {
      std::int64_t sum = 0;
      for (int b = 0; b < batches; ++b) {
        const auto s = batch_share(total, batches, b);
        EXPECT_GE(s, total / batches);
        EXPECT_LE(s, total / batches + 1);
        sum += s;
      }
      EXPECT_EQ(sum, total);
    }
  }
  EXPECT_EQ(batch_share(799800, 600, 0), 1333);
  EXPECT_EQ(batch_share(19800, 600, 0), 33);
}

TEST(PadDistribution, LayoutIsOldBetaNu) {
  const std::vector<double> d{0.2, 0.5, 0.3};
  EXPECT_EQ(pad_distribution(d, 2, true), (std::vector<double>{0.2, 0.5, 0.0, 0.3}));
  EXPECT_EQ(pad_distribution(std::vector<double>{0.4, 0.6}, 2, false), (std::vector<double>{0.4, 0.6, 0.0}));
}

TEST(RealizationAverager, MatchesMixtureCollapse) {
  GameTree tree{zoo::LeducPoker()};
  Rng rng = make_rng(8);
  RealizationAverager avg(tree, 1);
  CheckpointMixture mix;
  for (int c = 0; c < 4; ++c) {
    TreePolicy p(tree, 1);
    for (const auto& s : tree.infosets(1)) {
      auto probs = p.probs(s);
      double sum = 0.0;
      for (double& x : probs) sum += (x = uniform01(rng));
      for (double& x : probs) x /= sum;
    }
    avg.add(p);
    mix.components.emplace_back(p.to_behavior());
    mix.weights.push_back(0.25);
  }
  EXPECT_EQ(avg.count(), 4u);
  const auto collapsed = collapse_mixture_to_behavior(tree, 1, mix);
  const auto got = avg.result().to_behavior();
  for (const auto& [key, probs] : collapsed.table()) {
    for (std::size_t a = 0; a < probs.size(); ++a) ASSERT_NEAR(got.at(key)[a], probs[a], 1e-12) << key;
  }
}

TEST(RegretLearner, Exp3OnlyReadsTheSampledArm) {
  MetasolverSettings s;
  s.kind = MetasolverKind::kExp3;
  RegretLearner pi(s, 3, {0.0, 1.0});
  Rng rng = make_rng(1);
  for (int t = 0; t < 2000; ++t) pi.update(std::vector<double>{0.1, 0.9, 0.2}, rng);
  EXPECT_EQ(argmax(pi.distribution()), 1u);
  EXPECT_TRUE(is_distribution(pi.time_average(), 1e-9));
}

// -- Configuration ----------------------------------------------------------------------

TEST(SolverConfig, RejectsIncompatibleCombinations) {
  auto c = SolverConfig::defaults(Algorithm::kPsro, true);
  EXPECT_EQ(c.metasolver.kind, MetasolverKind::kExactLp);
  c.metasolver.kind = MetasolverKind::kMwu;
  EXPECT_THROW(c.validate(true), ParameterError);
  auto a = SolverConfig::defaults(Algorithm::kApsro, true);
  a.metasolver.kind = MetasolverKind::kExactLp;
  EXPECT_THROW(a.validate(true), ParameterError);
  auto q = SolverConfig::defaults(Algorithm::kSpPsro, true);
  q.oracle.kind = OracleKind::kQLearning;
  EXPECT_THROW(q.validate(true), ParameterError);
  auto e = SolverConfig::defaults(Algorithm::kSpPsro, false);
  EXPECT_EQ(e.oracle.kind, OracleKind::kQLearning);
  EXPECT_EQ(e.metasolver.kind, MetasolverKind::kExp3);
  EXPECT_NO_THROW(e.validate(false));
  e.schedule.n = 0;
  EXPECT_THROW(e.validate(false), ParameterError);
}

TEST(SolverConfig, TabularDefaultsFollowTheReferenceProtocol) {
  const auto c = SolverConfig::defaults(Algorithm::kSpPsro, false);
  EXPECT_EQ(c.schedule.episodes_per_iteration, 799800);
  EXPECT_EQ(c.schedule.metasolver_updates_per_iteration, 19800);
  EXPECT_EQ(c.schedule.batches, 600);
  EXPECT_DOUBLE_EQ(c.oracle.q_lr, 0.025);
  EXPECT_DOUBLE_EQ(c.oracle.q_epsilon, 0.2);
  EXPECT_DOUBLE_EQ(c.metasolver.mwu_lr, 0.1);
}

// -- PSRO ---------------------------------------------------------------------------------

TEST(Psro, EnumeratesEveryStrategyOfCyclicRps) {
  for (int n : {3, 5, 7, 9}) {
    const std::string spec = "generalized_rps:" + std::to_string(n);
    NfgSolver solver(nfg(spec.c_str()), exact_config(Algorithm::kPsro, true), 0);
    for (int t = 1; t <= n; ++t) {
      const auto out = solver.step(Algorithm::kPsro);
      if (t < n) {
        EXPECT_GT(out.exploitability, 1e-9) << "n=" << n << " t=" << t;
      } else {
        EXPECT_LE(out.exploitability, 1e-9) << "n=" << n;
      }
    }
    // The first n members are all distinct pure strategies.
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) seen[argmax(solver.member_mixed(0, k))]++;
    EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), n);
  }
}

TEST(Psro, SingleMemberDistributionIsCertain) {
  NfgSolver solver(nfg("generalized_rps:3"), exact_config(Algorithm::kPsro, true), 0);
  const auto out = solver.initial_outcome();
  EXPECT_EQ(out.distribution[0], std::vector<double>{1.0});
  EXPECT_EQ(out.exploitability, 2.0);  // (rock, rock): each side gains 1 by deviating
}

TEST(Psro, AppendsOneStrategyPerPlayerPerIteration) {
  NfgSolver solver(nfg("random_uniform:10,10", 3), exact_config(Algorithm::kPsro, true), 3);
  for (int t = 1; t <= 4; ++t) {
    solver.step(Algorithm::kPsro);
    EXPECT_EQ(solver.population().size(0), static_cast<std::size_t>(t + 1));
    EXPECT_EQ(solver.population().provenance(1, static_cast<std::size_t>(t)), Provenance::kBeta);
  }
}

TEST(Psro, KuhnConvergesWithExactOracle) {
  EfgSolver solver(efg("kuhn_poker"), exact_config(Algorithm::kPsro, false, 1, 1), 0);
  double e = 0.0;
  for (int t = 0; t < 30; ++t) e = solver.step(Algorithm::kPsro).exploitability;
  EXPECT_LT(e, 1e-6);
}

// -- APSRO ------------------------------------------------------------------------------------

TEST(Apsro, FullRpsPopulationReachesEquilibrium) {
  NfgSolver solver(nfg("generalized_rps:3"), exact_config(Algorithm::kApsro, true, 2000, 1), 0);
  for (int t = 0; t < 3; ++t) solver.step(Algorithm::kPsro);  // population now holds every pure strategy
  const auto out = solver.step(Algorithm::kApsro);
  EXPECT_LE(out.exploitability, 0.05);
}

TEST(Apsro, ZeroInnerStepsFreezeTheOpponent) {
  NfgSolver solver(nfg("random_uniform:12,12", 5), exact_config(Algorithm::kApsro, true, 2000, 0), 5);
  for (int t = 0; t < 4; ++t) solver.step(Algorithm::kPsro);
  const std::size_t k = solver.population().size(0);
  const auto out = solver.step(Algorithm::kApsro);
  // beta never trains: it stays uniform, so the arms are static.
  std::vector<double> arms(k);
  const auto values = solver.game().row_values(uniform_vector(12));
  for (std::size_t i = 0; i < k; ++i) arms[i] = dot(solver.member_mixed(0, i), values);
  EXPECT_EQ(argmax(out.distribution[0]), argmax(arms));
  EXPECT_EQ(out.episodes, 0);
}

TEST(Apsro, AnytimeOnRandomGame) {
  NfgSolver solver(nfg("random_uniform:30,30", 1), exact_config(Algorithm::kApsro, true, 1000, 1), 1);
  double prev = solver.step(Algorithm::kApsro).exploitability;
  for (int t = 2; t <= 10; ++t) {
    const double cur = solver.step(Algorithm::kApsro).exploitability;
    EXPECT_LE(cur, prev + 0.05) << "t=" << t;
    prev = cur;
  }
}

// -- SP-PSRO ------------------------------------------------------------------------------------

TEST(SpPsro, AppendsBetaAndNewStrategy) {
  NfgSolver solver(nfg("generalized_rps:20"), SolverConfig::defaults(Algorithm::kSpPsro, true), 0);
  std::vector<std::vector<double>> before;
  for (int t = 1; t <= 3; ++t) {
    solver.step(Algorithm::kSpPsro);
    EXPECT_EQ(solver.population().size(1), static_cast<std::size_t>(1 + 2 * t));
    EXPECT_EQ(solver.population().provenance(1, static_cast<std::size_t>(2 * t - 1)), Provenance::kBeta);
    EXPECT_EQ(solver.population().provenance(1, static_cast<std::size_t>(2 * t)), Provenance::kNuBar);
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_EQ(solver.member_mixed(0, k), before[k]);
    before.clear();
    for (std::size_t k = 0; k < solver.population().size(0); ++k) before.push_back(solver.member_mixed(0, k));
  }
}

TEST(SpPsro, BeatsPsroOnBigRps) {
  double sp = 0.0, psro = 0.0;
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    NfgSolver a(nfg("generalized_rps:50"), SolverConfig::defaults(Algorithm::kSpPsro, true), seed);
    NfgSolver b(nfg("generalized_rps:50"), SolverConfig::defaults(Algorithm::kPsro, true), seed);
    for (int t = 0; t < 3; ++t) {
      sp = a.step(Algorithm::kSpPsro).exploitability;
      psro = b.step(Algorithm::kPsro).exploitability;
    }
    EXPECT_LT(sp, psro);
  }
}

TEST(SpPsro, EquilibriumMemberMakesTheRestrictedGameSolved) {
  // Once the uniform NE of cyclic RPS is a member, the best restricted
  // distribution is unexploitable.
  const auto game = nfg("generalized_rps:7");
  const std::vector<PopulationStrategy> pop{PureStrategy{0}, PureStrategy{3}, MixedStrategy(uniform_vector(7))};
  std::vector<PopulationStrategy> full;
  for (std::size_t j = 0; j < 7; ++j) full.emplace_back(PureStrategy{j});
  const auto ne = exact_nash_zero_sum(eval::empirical_matrix(*game, pop, full));
  EXPECT_LE(exact_br_nfg(*game, to_mixed(pop, ne.row.probs(), 7), 1).value, 1e-9);
}

TEST(SpPsro, OneCheckpointAverageIsTheLastIterate) {
  auto cfg = SolverConfig::defaults(Algorithm::kSpPsro, true);
  cfg.schedule.n = 20;
  cfg.schedule.m = 5;
  cfg.schedule.checkpoint_every = 100;
  NfgSolver avg(nfg("generalized_rps:9"), cfg, 0), last(nfg("generalized_rps:9"), cfg, 0);
  avg.step(Algorithm::kSpPsro);
  last.step(Algorithm::kSpPsroLastIterate);
  EXPECT_EQ(avg.member_mixed(0, 2), last.member_mixed(0, 2));
  EXPECT_EQ(last.population().provenance(0, 2), Provenance::kNuLast);
}

TEST(SpPsro, SingleInnerStepMatchesLastIterate) {
  auto cfg = SolverConfig::defaults(Algorithm::kSpPsro, true);
  cfg.schedule.n = 1;
  cfg.schedule.m = 1;
  NfgSolver a(nfg("blotto:5,3"), cfg, 2), b(nfg("blotto:5,3"), cfg, 2);
  a.step(Algorithm::kSpPsro);
  b.step(Algorithm::kSpPsroLastIterate);
  for (int p = 0; p < 2; ++p)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(a.member_mixed(p, k), b.member_mixed(p, k));
}

TEST(SpPsroNotAnytime, AverageCollapsesTowardPure) {
  NfgSolver solver(nfg("generalized_rps:50"), SolverConfig::defaults(Algorithm::kSpPsroNotAnytime, true), 0);
  solver.step(Algorithm::kSpPsroNotAnytime);
  const auto& nu_bar = solver.member_mixed(0, 2);
  EXPECT_GE(*std::max_element(nu_bar.begin(), nu_bar.end()), 0.9);
}

TEST(SpPsroNotAnytime, ZeroInnerStepsIsPsroPlusInitialNu) {
  auto cfg = SolverConfig::defaults(Algorithm::kSpPsroNotAnytime, true);
  cfg.schedule.m = 0;
  auto psro_cfg = SolverConfig::defaults(Algorithm::kPsro, true);
  psro_cfg.schedule.m = 0;
  NfgSolver na(nfg("random_uniform:8,8", 4), cfg, 4), ps(nfg("random_uniform:8,8", 4), psro_cfg, 4);
  na.step(Algorithm::kSpPsroNotAnytime);
  ps.step(Algorithm::kPsro);
  for (int p = 0; p < 2; ++p) {
    EXPECT_EQ(na.member_mixed(p, 1), ps.member_mixed(p, 1));
    EXPECT_EQ(na.member_mixed(p, 2), uniform_vector(8));
  }
}

// -- Extensive form ----------------------------------------------------------------------------------

TEST(EfgSolver, ExactSpPsroOnKuhnImproves) {
  EfgSolver solver(efg("kuhn_poker"), exact_config(Algorithm::kSpPsro, false, 50, 2), 0);
  const double start = solver.initial_outcome().exploitability;
  double e = start;
  for (int t = 0; t < 8; ++t) e = solver.step(Algorithm::kSpPsro).exploitability;
  EXPECT_LT(e, 0.25 * start);
  EXPECT_EQ(solver.population().size(0), 17u);
}

TEST(EfgSolver, TabularIterationCountsEpisodes) {
  EfgSolver solver(efg("repeated_rps:1"), tabular_config(Algorithm::kSpPsro, 3000, 300, 30), 1);
  const auto out = solver.step(Algorithm::kSpPsro);
  EXPECT_EQ(out.episodes, 6000);
  EXPECT_TRUE(is_distribution(out.distribution[0], 1e-9));
  EXPECT_EQ(out.distribution[0].size(), 3u);
  EXPECT_EQ(out.distribution[0][1], 0.0);  // beta is never in the reported mix
}

TEST(EfgSolver, SampledPayoffAndRolloutModesRun) {
  auto cfg = tabular_config(Algorithm::kApsro, 2000, 200, 20);
  cfg.metasolver.kind = MetasolverKind::kMwu;
  cfg.metasolver.sampled_payoffs = true;
  EfgSolver a(efg("kuhn_poker"), cfg, 0);
  EXPECT_GE(a.step(Algorithm::kApsro).exploitability, 0.0);
  auto p = tabular_config(Algorithm::kPsro, 2000, 0, 20);
  p.metasolver.payoff_rollouts = 200;
  EfgSolver b(efg("kuhn_poker"), p, 0);
  b.step(Algorithm::kPsro);
  EXPECT_GE(b.step(Algorithm::kPsro).exploitability, 0.0);
}

// -- Runs ---------------------------------------------------------------------------------------------

TEST(Run, DeterministicGivenSeed) {
  const auto spec = zoo::GameSpec::parse("kuhn_poker");
  const auto cfg = tabular_config(Algorithm::kSpPsro, 2000, 100, 10);
  auto a = run(spec, cfg, 7, 3), b = run(spec, cfg, 7, 3);
  for (auto* v : {&a, &b})
    for (auto& r : *v) r.wall_ms = 0;
  EXPECT_EQ(a, b);
}

TEST(Run, ZeroIterationsReportsInitialPopulation) {
  const auto rec = run(zoo::GameSpec::parse("generalized_rps:5"), SolverConfig::defaults(Algorithm::kPsro, true), 0, 0);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0].iteration, 0);
  EXPECT_EQ(rec[0].population_size[0], 1u);
  EXPECT_EQ(rec[0].exploitability, 2.0);
}

TEST(Run, RecordsAreOneBasedAndMonotone) {
  const auto rec = run(zoo::GameSpec::parse("blotto:5,3"), SolverConfig::defaults(Algorithm::kSpPsro, true), 0, 5);
  ASSERT_EQ(rec.size(), 5u);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    EXPECT_EQ(rec[i].iteration, static_cast<int>(i + 1));
    EXPECT_GE(rec[i].exploitability, -1e-9);
    EXPECT_EQ(rec[i].algorithm, "sp_psro");
    EXPECT_EQ(rec[i].game, "blotto:5,3");
    if (i) {
      EXPECT_GE(rec[i].cumulative_episodes, rec[i - 1].cumulative_episodes);
    }
  }
  EXPECT_EQ(rec.back().cumulative_episodes, 5 * 2 * 200 * 10);
}

TEST(Run, SwitchesToApsro) {
  auto cfg = SolverConfig::defaults(Algorithm::kSpPsro, true);
  cfg.schedule.switch_to_apsro_after = 2;
  EXPECT_EQ(algorithm_at(cfg, 2), Algorithm::kSpPsro);
  EXPECT_EQ(algorithm_at(cfg, 3), Algorithm::kApsro);
  const auto rec = run(zoo::GameSpec::parse("generalized_rps:9"), cfg, 0, 4);
  EXPECT_EQ(rec[1].population_size[0], 5u);
  EXPECT_EQ(rec[3].population_size[0], 7u);
}

TEST(Run, SeedsConcatenateInOrder) {
  const auto rec = run(zoo::GameSpec::parse("random_uniform:6,6"), SolverConfig::defaults(Algorithm::kApsro, true),
                       std::vector<std::uint64_t>{5, 2}, 2);
  ASSERT_EQ(rec.size(), 4u);
  EXPECT_EQ(rec[0].seed, 5u);
  EXPECT_EQ(rec[3].seed, 2u);
}

TEST(Run, ErrorsNameIterationAndSeed) {
  auto cfg = SolverConfig::defaults(Algorithm::kPsro, true);
  cfg.metasolver.kind = MetasolverKind::kMwu;
  EXPECT_THROW(run(zoo::GameSpec::parse("generalized_rps:3"), cfg, 0, 1), ParameterError);
}

}  // namespace
}  // namespace sppsro
