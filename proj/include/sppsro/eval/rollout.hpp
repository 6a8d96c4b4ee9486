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

#include "sppsro/common.hpp"
#include "sppsro/game/policy.hpp"
#include "sppsro/game/simulation.hpp"

namespace sppsro::eval {

/// Monte-Carlo estimate of player 0's expected value. Only for fidelity
/// studies against sampled pipelines; the algorithms use exact traversal.
inline double rollout_value(const TreePolicy& p0, const TreePolicy& p1, int episodes, Rng& rng) {
  if (episodes < 1) throw ParameterError("rollout_value: episodes must be >= 1");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    total += play_episode(p0.tree(), PolicyActor{&p0}, PolicyActor{&p1}, rng, kIgnoreTransition);
  }
  return total / episodes;
}

}  // namespace sppsro::eval
