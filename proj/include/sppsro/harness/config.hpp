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

// Experiment configuration files.
//
// Plain text, one `key = value` per line, `[section]` headers, `#` comments:
//
//   algorithm = sp_psro
//   iterations = 10
//   seeds = 0, 1, 2
//   output = big_rps.csv
//
//   [game]
//   spec = generalized_rps:50
//
//   [schedule]      n, m, batches, checkpoint_every, episodes_per_iteration,
//                   metasolver_updates_per_iteration, switch_to_apsro_after
//   [metasolver]    kind, mwu_lr, exp3_lr, exp3_gamma, fp_iterations,
//                   sampled_payoffs, payoff_window, payoff_rollouts
//   [oracle]        kind, lambda, learning_rate, epsilon
//   [run]           parallel_players, threads
//
// Unset keys take the defaults for the algorithm and game representation
// (SolverConfig::defaults). Every error names the offending line.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sppsro/game/normal_form.hpp"
#include "sppsro/population/config.hpp"
#include "sppsro/zoo/game_spec.hpp"

namespace sppsro::harness {

/// Invalid configuration; `line` is 0 when no single line is at fault.
struct ConfigError : std::runtime_error {
  ConfigError(int line, const std::string& msg, const std::string& file = "")
      : std::runtime_error(format(line, msg, file)), line(line), message(msg) {}
  int line;
  std::string message;

 private:
  static std::string format(int line, const std::string& msg, const std::string& file) {
    std::string where = file;
    if (line > 0) where += (where.empty() ? "line " : ":") + std::to_string(line);
    return where.empty() ? msg : where + ": " + msg;
  }
};

struct ExperimentConfig {
  zoo::GameSpec game;
  SolverConfig solver;
  std::vector<std::uint64_t> seeds{0};
  int iterations = 10;
  std::string output = "results.csv";
  int threads = 1;

  bool normal_form() const { return game.is_normal_form(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& v, int line, const std::string& key) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ConfigError(line, "'" + key + "' expects a number, got '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(line, "'" + key + "' expects true/false, got '" + v + "'");
}

struct Entry {
  std::string value;
  int line;
};

}  // namespace detail

/// Parses configuration text. Unknown keys and sections are errors.
inline ExperimentConfig parse_config(const std::string& text) {
  using detail::Entry;
  std::map<std::string, Entry> kv;  // "section.key" -> value
  {
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError(line, "malformed section header '" + s + "'");
        section = detail::trim(s.substr(1, s.size() - 2));
        static const char* known[] = {"game", "schedule", "metasolver", "oracle", "run"};
        bool ok = false;
        for (const char* k : known) ok = ok || section == k;
        if (!ok) throw ConfigError(line, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value', got '" + s + "'");
      const std::string key = detail::trim(s.substr(0, eq));
      const std::string value = detail::trim(s.substr(eq + 1));
      if (key.empty()) throw ConfigError(line, "empty key");
      const std::string full = section.empty() ? key : section + "." + key;
      if (kv.count(full)) throw ConfigError(line, "duplicate key '" + full + "' (first set on line " +
                                                      std::to_string(kv[full].line) + ")");
      kv[full] = Entry{value, line};
    }
  }

  std::map<std::string, int> lines;  // consumed key -> line
  auto take = [&](const std::string& key) -> std::optional<Entry> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    Entry e = it->second;
    lines[key] = e.line;
    kv.erase(it);
    return e;
  };

  ExperimentConfig cfg;
  const auto game_entry = take("game.spec");
  if (!game_entry) throw ConfigError(0, "missing required key 'spec' in section [game]");
  try {
    cfg.game = zoo::GameSpec::parse(game_entry->value);
  } catch (const std::exception& e) {
    throw ConfigError(game_entry->line, e.what());
  }

  const auto alg_entry = take("algorithm");
  Algorithm algorithm = Algorithm::kSpPsro;
  if (alg_entry) {
    try {
      algorithm = parse_algorithm(alg_entry->value);
    } catch (const std::exception& e) {
      throw ConfigError(alg_entry->line, e.what());
    }
  }
  cfg.solver = SolverConfig::defaults(algorithm, cfg.game.is_normal_form());
  auto& s = cfg.solver;

  auto num_int = [&](const char* key, auto& field) {
    if (auto e = take(key)) {
      field = detail::parse_number<std::decay_t<decltype(field)>>(e->value, e->line, key);
    }
  };
  auto num_double = [&](const char* key, double& field) {
    if (auto e = take(key)) field = detail::parse_number<double>(e->value, e->line, key);
  };
  auto boolean = [&](const char* key, bool& field) {
    if (auto e = take(key)) field = detail::parse_bool(e->value, e->line, key);
  };

  if (auto e = take("iterations")) {
    cfg.iterations = detail::parse_number<int>(e->value, e->line, "iterations");
    if (cfg.iterations < 0) throw ConfigError(e->line, "'iterations' must be >= 0");
  }
  if (auto e = take("output")) cfg.output = e->value;
  if (auto e = take("seeds")) {
    cfg.seeds.clear();
    std::istringstream in(e->value);
    std::string item;
    while (std::getline(in, item, ',')) {
      cfg.seeds.push_back(detail::parse_number<std::uint64_t>(detail::trim(item), e->line, "seeds"));
    }
    if (cfg.seeds.empty()) throw ConfigError(e->line, "'seeds' needs at least one seed");
  }

  num_int("schedule.n", s.schedule.n);
  num_int("schedule.m", s.schedule.m);
  num_int("schedule.batches", s.schedule.batches);
  num_int("schedule.checkpoint_every", s.schedule.checkpoint_every);
  num_int("schedule.episodes_per_iteration", s.schedule.episodes_per_iteration);
  num_int("schedule.metasolver_updates_per_iteration", s.schedule.metasolver_updates_per_iteration);
  if (auto e = take("schedule.switch_to_apsro_after")) {
    if (e->value == "none") {
      s.schedule.switch_to_apsro_after.reset();
    } else {
      s.schedule.switch_to_apsro_after = detail::parse_number<int>(e->value, e->line, "switch_to_apsro_after");
    }
  }

  if (auto e = take("metasolver.kind")) {
    try {
      s.metasolver.kind = parse_metasolver(e->value);
    } catch (const std::exception& ex) {
      throw ConfigError(e->line, ex.what());
    }
  }
  num_double("metasolver.mwu_lr", s.metasolver.mwu_lr);
  num_double("metasolver.exp3_lr", s.metasolver.exp3_lr);
  num_double("metasolver.exp3_gamma", s.metasolver.exp3_gamma);
  num_int("metasolver.fp_iterations", s.metasolver.fp_iterations);
  boolean("metasolver.sampled_payoffs", s.metasolver.sampled_payoffs);
  num_int("metasolver.payoff_window", s.metasolver.payoff_window);
  num_int("metasolver.payoff_rollouts", s.metasolver.payoff_rollouts);

  if (auto e = take("oracle.kind")) {
    try {
      s.oracle.kind = parse_oracle(e->value);
    } catch (const std::exception& ex) {
      throw ConfigError(e->line, ex.what());
    }
  }
  num_double("oracle.lambda", s.oracle.lambda);
  num_double("oracle.learning_rate", s.oracle.q_lr);
  num_double("oracle.epsilon", s.oracle.q_epsilon);

  boolean("run.parallel_players", s.parallel_players);
  if (auto e = take("run.threads")) {
    cfg.threads = detail::parse_number<int>(e->value, e->line, "threads");
    if (cfg.threads < 1) throw ConfigError(e->line, "'threads' must be >= 1");
  }

  if (!kv.empty()) {
    const auto& [key, entry] = *kv.begin();
    throw ConfigError(entry.line, "unknown key '" + key + "'");
  }
  try {
    s.validate(cfg.game.is_normal_form());
  } catch (const ParameterError& e) {
    // Blame the named key, or the setting that implied its default.
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(':'));
    int line = lines.count(key) ? lines[key] : 0;
    if (line == 0 && key == "metasolver.kind" && lines.count("algorithm")) line = lines["algorithm"];
    if (line == 0 && key == "oracle.kind") line = lines["game.spec"];
    throw ConfigError(line, msg);
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line, e.message, path);
  }
}

/// Canonical, fully resolved configuration text; parse_config of the result
/// reproduces the same configuration.
inline std::string to_config_text(const ExperimentConfig& cfg) {
  const auto& s = cfg.solver;
  std::ostringstream out;
  out << "algorithm = " << to_string(s.algorithm) << "\n";
  out << "iterations = " << cfg.iterations << "\n";
  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) out << (i ? ", " : "") << cfg.seeds[i];
  out << "\n";
  out << "output = " << cfg.output << "\n";
  out << "\n[game]\nspec = " << cfg.game.to_string() << "\n";
  out << "\n[schedule]\n";
  out << "n = " << s.schedule.n << "\n";
  out << "m = " << s.schedule.m << "\n";
  out << "batches = " << s.schedule.batches << "\n";
  out << "checkpoint_every = " << s.schedule.checkpoint_every << "\n";
  out << "episodes_per_iteration = " << s.schedule.episodes_per_iteration << "\n";
  out << "metasolver_updates_per_iteration = " << s.schedule.metasolver_updates_per_iteration << "\n";
  out << "switch_to_apsro_after = "
      << (s.schedule.switch_to_apsro_after ? std::to_string(*s.schedule.switch_to_apsro_after) : "none") << "\n";
  out << "\n[metasolver]\n";
  out << "kind = " << to_string(s.metasolver.kind) << "\n";
  out << "mwu_lr = " << format_double(s.metasolver.mwu_lr) << "\n";
  out << "exp3_lr = " << format_double(s.metasolver.exp3_lr) << "\n";
  out << "exp3_gamma = " << format_double(s.metasolver.exp3_gamma) << "\n";
  out << "fp_iterations = " << s.metasolver.fp_iterations << "\n";
  out << "sampled_payoffs = " << (s.metasolver.sampled_payoffs ? "true" : "false") << "\n";
  out << "payoff_window = " << s.metasolver.payoff_window << "\n";
  out << "payoff_rollouts = " << s.metasolver.payoff_rollouts << "\n";
  out << "\n[oracle]\n";
  out << "kind = " << to_string(s.oracle.kind) << "\n";
  out << "lambda = " << format_double(s.oracle.lambda) << "\n";
  out << "learning_rate = " << format_double(s.oracle.q_lr) << "\n";
  out << "epsilon = " << format_double(s.oracle.q_epsilon) << "\n";
  out << "\n[run]\n";
  out << "parallel_players = " << (s.parallel_players ? "true" : "false") << "\n";
  out << "threads = " << cfg.threads << "\n";
  return out.str();
}

}  // namespace sppsro::harness
