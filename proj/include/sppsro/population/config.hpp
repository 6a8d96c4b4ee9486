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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sppsro/common.hpp"

namespace sppsro {

enum class Algorithm { kPsro, kApsro, kSpPsro, kSpPsroLastIterate, kSpPsroNotAnytime };
enum class MetasolverKind { kMwu, kExp3, kExactLp, kFictitiousPlay };
enum class OracleKind { kExact, kSmoothed, kQLearning };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kPsro: return "psro";
    case Algorithm::kApsro: return "apsro";
    case Algorithm::kSpPsro: return "sp_psro";
    case Algorithm::kSpPsroLastIterate: return "sp_psro_last_iterate";
    case Algorithm::kSpPsroNotAnytime: return "sp_psro_not_anytime";
  }
  return "?";
}

inline std::string_view to_string(MetasolverKind m) {
  switch (m) {
    case MetasolverKind::kMwu: return "mwu";
    case MetasolverKind::kExp3: return "exp3";
    case MetasolverKind::kExactLp: return "exact_lp";
    case MetasolverKind::kFictitiousPlay: return "fictitious_play";
  }
  return "?";
}

inline std::string_view to_string(OracleKind o) {
  switch (o) {
    case OracleKind::kExact: return "exact";
    case OracleKind::kSmoothed: return "smoothed";
    case OracleKind::kQLearning: return "q_learning";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::kPsro, Algorithm::kApsro, Algorithm::kSpPsro, Algorithm::kSpPsroLastIterate,
                 Algorithm::kSpPsroNotAnytime}) {
    if (to_string(a) == s) return a;
  }
  throw ParameterError("unknown algorithm '" + std::string(s) + "'");
}

inline MetasolverKind parse_metasolver(std::string_view s) {
  for (auto m : {MetasolverKind::kMwu, MetasolverKind::kExp3, MetasolverKind::kExactLp,
                 MetasolverKind::kFictitiousPlay}) {
    if (to_string(m) == s) return m;
  }
  throw ParameterError("unknown metasolver '" + std::string(s) + "'");
}

inline OracleKind parse_oracle(std::string_view s) {
  for (auto o : {OracleKind::kExact, OracleKind::kSmoothed, OracleKind::kQLearning}) {
    if (to_string(o) == s) return o;
  }
  throw ParameterError("unknown oracle '" + std::string(s) + "'");
}

inline bool is_no_regret(Algorithm a) { return a != Algorithm::kPsro && a != Algorithm::kSpPsroNotAnytime; }
inline bool trains_new_strategy(Algorithm a) {
  return a == Algorithm::kSpPsro || a == Algorithm::kSpPsroLastIterate || a == Algorithm::kSpPsroNotAnytime;
}

/// Loop sizes of one population iteration.
///
/// Normal-form and exact-oracle runs use the n x m structure. Tabular
/// Q-learning runs use episodes / metasolver updates split over `batches`.
struct IterationSchedule {
  int n = 200;                 // no-regret updates per iteration
  int m = 10;                  // oracle steps per no-regret update
  int batches = 600;           // tabular interleaving granularity
  int checkpoint_every = 1;    // nu updates (tabular: batches) between checkpoints
  std::int64_t episodes_per_iteration = 799800;
  std::int64_t metasolver_updates_per_iteration = 19800;
  std::optional<int> switch_to_apsro_after;

  void validate() const {
    if (n < 1) throw ParameterError("schedule.n: must be >= 1");
    if (m < 0) throw ParameterError("schedule.m: must be >= 0");
    if (batches < 1) throw ParameterError("schedule.batches: must be >= 1");
    if (checkpoint_every < 1) throw ParameterError("schedule.checkpoint_every: must be >= 1");
    if (episodes_per_iteration < 0) throw ParameterError("schedule.episodes_per_iteration: must be >= 0");
    if (metasolver_updates_per_iteration < 0) {
      throw ParameterError("schedule.metasolver_updates_per_iteration: must be >= 0");
    }
    if (switch_to_apsro_after && *switch_to_apsro_after < 0) {
      throw ParameterError("schedule.switch_to_apsro_after: must be >= 0");
    }
  }
};

struct MetasolverSettings {
  MetasolverKind kind = MetasolverKind::kMwu;
  double mwu_lr = 0.1;
  double exp3_lr = 1.0;
  double exp3_gamma = 0.1;
  int fp_iterations = 2000;
  // Tabular fidelity modes: MWU on windowed episode returns instead of exact
  // payoffs, and PSRO payoff matrices from rollouts instead of traversal.
  bool sampled_payoffs = false;
  int payoff_window = 1000;
  int payoff_rollouts = 0;
};

struct OracleSettings {
  OracleKind kind = OracleKind::kSmoothed;
  double lambda = 0.1;
  double q_lr = 0.025;
  double q_epsilon = 0.2;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::kSpPsro;
  IterationSchedule schedule;
  MetasolverSettings metasolver;
  OracleSettings oracle;
  bool parallel_players = false;

  /// Defaults for a game representation: smoothed BR + MWU for matrix games,
  /// tabular Q-learning + Exp3 for extensive-form games.
  static SolverConfig defaults(Algorithm algorithm, bool normal_form) {
    SolverConfig c;
    c.algorithm = algorithm;
    c.oracle.kind = normal_form ? OracleKind::kSmoothed : OracleKind::kQLearning;
    if (is_no_regret(algorithm)) {
      c.metasolver.kind = normal_form ? MetasolverKind::kMwu : MetasolverKind::kExp3;
    } else {
      c.metasolver.kind = MetasolverKind::kExactLp;
    }
    return c;
  }

  /// Throws ParameterError whose message starts with the offending
  /// configuration key ("section.key: ...").
  void validate(bool normal_form) const {
    schedule.validate();
    const bool exact_ne = metasolver.kind == MetasolverKind::kExactLp ||
                          metasolver.kind == MetasolverKind::kFictitiousPlay;
    if (!is_no_regret(algorithm) && !exact_ne) {
      throw ParameterError("metasolver.kind: " + std::string(to_string(algorithm)) + " requires exact_lp or fictitious_play");
    }
    if (is_no_regret(algorithm) && exact_ne) {
      throw ParameterError("metasolver.kind: " + std::string(to_string(algorithm)) + " requires mwu or exp3");
    }
    if (schedule.switch_to_apsro_after && metasolver.kind != MetasolverKind::kMwu &&
        metasolver.kind != MetasolverKind::kExp3) {
      throw ParameterError("schedule.switch_to_apsro_after: requires a no-regret metasolver (mwu or exp3)");
    }
    if (normal_form && oracle.kind == OracleKind::kQLearning) {
      throw ParameterError("oracle.kind: q_learning needs an extensive-form game");
    }
    if (!normal_form && oracle.kind == OracleKind::kSmoothed) {
      throw ParameterError("oracle.kind: smoothed needs a normal-form game");
    }
    if (!(oracle.lambda >= 0.0 && oracle.lambda <= 1.0)) throw ParameterError("oracle.lambda: must be in [0, 1]");
    if (!(oracle.q_epsilon >= 0.0 && oracle.q_epsilon <= 1.0)) throw ParameterError("oracle.epsilon: must be in [0, 1]");
    if (!(oracle.q_lr > 0.0 && oracle.q_lr <= 1.0)) throw ParameterError("oracle.learning_rate: must be in (0, 1]");
    if (!(metasolver.mwu_lr > 0.0)) throw ParameterError("metasolver.mwu_lr: must be > 0");
    if (!(metasolver.exp3_lr > 0.0)) throw ParameterError("metasolver.exp3_lr: must be > 0");
    if (!(metasolver.exp3_gamma >= 0.0 && metasolver.exp3_gamma <= 1.0)) {
      throw ParameterError("metasolver.exp3_gamma: must be in [0, 1]");
    }
    if (metasolver.fp_iterations < 1) throw ParameterError("metasolver.fp_iterations: must be >= 1");
    if (metasolver.payoff_window < 1) throw ParameterError("metasolver.payoff_window: must be >= 1");
    if (metasolver.payoff_rollouts < 0) throw ParameterError("metasolver.payoff_rollouts: must be >= 0");
    if (metasolver.sampled_payoffs && (normal_form || metasolver.kind != MetasolverKind::kMwu ||
                                       oracle.kind != OracleKind::kQLearning)) {
      throw ParameterError("metasolver.sampled_payoffs: applies to mwu with a q_learning oracle only");
    }
  }
};

}  // namespace sppsro
