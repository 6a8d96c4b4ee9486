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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sppsro/harness/config.hpp"
#include "sppsro/harness/csv.hpp"
#include "sppsro/population/run.hpp"

namespace sppsro::harness {

/// Runs every seed of `cfg`, fanning seeds out over up to cfg.threads worker
/// threads. Each seed's run is sequential; rows come back ordered by
/// (seed position in cfg.seeds, iteration) regardless of scheduling.
inline std::vector<IterationRecord> run_experiment(const ExperimentConfig& cfg,
                                                   const RecordCallback& on_record = {}) {
  const std::size_t n = cfg.seeds.size();
  std::vector<std::vector<IterationRecord>> per_seed(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        RecordCallback cb;
        if (on_record) {
          cb = [&](const IterationRecord& r) {
            std::lock_guard lock(callback_mutex);
            on_record(r);
          };
        }
        per_seed[k] = run(cfg.game, cfg.solver, cfg.seeds[k], cfg.iterations, cb);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto threads = std::clamp<std::size_t>(static_cast<std::size_t>(cfg.threads), 1, n);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<IterationRecord> out;
  for (auto& rows : per_seed) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

/// CSV with the resolved configuration echoed as '#' comments.
inline void write_experiment_csv(std::ostream& out, const ExperimentConfig& cfg,
                                 const std::vector<IterationRecord>& records) {
  write_csv(out, records, to_config_text(cfg));
}

inline void write_experiment_csv(const std::string& path, const ExperimentConfig& cfg,
                                 const std::vector<IterationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  write_experiment_csv(out, cfg, records);
  if (!out) throw ParameterError("write failed for '" + path + "'");
}

}  // namespace sppsro::harness
