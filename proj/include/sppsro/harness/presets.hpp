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
#include <string>
#include <string_view>
#include <vector>

#include "sppsro/harness/config.hpp"

namespace sppsro::harness {

/// Named experiment setups at desk scale. Each uses seeds {0, 1, 2} and 10
/// iterations unless overridden on the command line.
struct Preset {
  std::string_view name;
  std::string_view description;
  std::string_view text;  // configuration text
};

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"fig3a-big-rps-50", "SP-PSRO on generalized RPS with 50 actions (smoothed BR, MWU)",
       "algorithm = sp_psro\niterations = 10\nseeds = 0, 1, 2\noutput = fig3a-big-rps-50.csv\n"
       "[game]\nspec = generalized_rps:50\n"},
      {"fig3b-random-30", "SP-PSRO on a 30x30 uniform random matrix (seeded per run)",
       "algorithm = sp_psro\niterations = 10\nseeds = 0, 1, 2\noutput = fig3b-random-30.csv\n"
       "[game]\nspec = random_uniform:30,30\n"},
      {"fig3e-blotto-5-3", "SP-PSRO on 5-coin 3-field Blotto",
       "algorithm = sp_psro\niterations = 10\nseeds = 0, 1, 2\noutput = fig3e-blotto-5-3.csv\n"
       "[game]\nspec = blotto:5,3\n"},
      {"tab-leduc", "Tabular SP-PSRO on Leduc poker (Q-learning BR, Exp3, full per-iteration budget)",
       "algorithm = sp_psro\niterations = 35\nseeds = 0, 1, 2\noutput = tab-leduc.csv\n"
       "[game]\nspec = leduc_poker\n"
       "[schedule]\nbatches = 600\nepisodes_per_iteration = 799800\nmetasolver_updates_per_iteration = 19800\n"
       "[metasolver]\nkind = exp3\n"
       "[oracle]\nkind = q_learning\nlearning_rate = 0.025\nepsilon = 0.2\n"},
      {"tab-repeated-rps", "Tabular SP-PSRO on 4-times repeated RPS",
       "algorithm = sp_psro\niterations = 10\nseeds = 0, 1, 2\noutput = tab-repeated-rps.csv\n"
       "[game]\nspec = repeated_rps:4\n"
       "[schedule]\nbatches = 600\nepisodes_per_iteration = 799800\nmetasolver_updates_per_iteration = 19800\n"
       "[metasolver]\nkind = exp3\n"
       "[oracle]\nkind = q_learning\nlearning_rate = 0.025\nepsilon = 0.2\n"},
      {"fig8e-kuhn-nfg", "SP-PSRO on the induced normal form of Kuhn poker (64x64)",
       "algorithm = sp_psro\niterations = 10\nseeds = 0, 1, 2\noutput = fig8e-kuhn-nfg.csv\n"
       "[game]\nspec = kuhn_nfg\n"},
      {"ablation-not-anytime", "SP-PSRO Not Anytime on generalized RPS with 50 actions",
       "algorithm = sp_psro_not_anytime\niterations = 10\nseeds = 0, 1, 2\noutput = ablation-not-anytime.csv\n"
       "[game]\nspec = generalized_rps:50\n"},
      {"ablation-last-iterate", "SP-PSRO last-iterate on generalized RPS with 50 actions",
       "algorithm = sp_psro_last_iterate\niterations = 10\nseeds = 0, 1, 2\noutput = ablation-last-iterate.csv\n"
       "[game]\nspec = generalized_rps:50\n"},
  };
  return all;
}

inline ExperimentConfig preset_config(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return parse_config(std::string(p.text));
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigError(0, "unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace sppsro::harness
