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


// Umbrella header: everything except the CLI harness.

#pragma once

#include "sppsro/common.hpp"
#include "sppsro/eval/evaluation.hpp"
#include "sppsro/eval/rollout.hpp"
#include "sppsro/game/extensive.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/game/simulation.hpp"
#include "sppsro/metasolvers/no_regret.hpp"
#include "sppsro/metasolvers/zero_sum_lp.hpp"
#include "sppsro/oracles/exact_best_response.hpp"
#include "sppsro/oracles/learners.hpp"
#include "sppsro/population/config.hpp"
#include "sppsro/population/efg_solver.hpp"
#include "sppsro/population/nfg_solver.hpp"
#include "sppsro/population/population.hpp"
#include "sppsro/population/run.hpp"
#include "sppsro/zoo/game_spec.hpp"
#include "sppsro/zoo/induced_normal_form.hpp"
#include "sppsro/zoo/kuhn_poker.hpp"
#include "sppsro/zoo/leduc_poker.hpp"
#include "sppsro/zoo/matrix_games.hpp"
#include "sppsro/zoo/repeated_matrix.hpp"
