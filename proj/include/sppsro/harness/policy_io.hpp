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

// Policy files (JSON).
//
//   normal form:      [0.5, 0.25, 0.25]        or "uniform"
//   extensive form:   {"<infoset key>": [p_a, p_b, ...], ...}   or "uniform"
//
// Extensive-form files must cover every infoset of the player; probabilities
// follow the infoset's legal-action order.

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sppsro/game/normal_form.hpp"
#include "sppsro/game/policy.hpp"

namespace sppsro::harness {

/// The policy file could not be read or does not fit the game.
struct PolicyFileError : ParameterError {
  using ParameterError::ParameterError;
};

namespace detail {

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PolicyFileError("cannot open policy file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PolicyFileError(path + ": " + e.what());
  }
}

inline std::vector<double> read_probs(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw PolicyFileError(where + ": expected an array of probabilities");
  std::vector<double> p;
  double sum = 0.0;
  for (const auto& x : j) {
    if (!x.is_number()) throw PolicyFileError(where + ": non-numeric probability");
    const double v = x.get<double>();
    if (!(v >= 0.0)) throw PolicyFileError(where + ": negative probability");
    p.push_back(v);
    sum += v;
  }
  if (p.empty() || std::abs(sum - 1.0) > 1e-6) throw PolicyFileError(where + ": probabilities must sum to 1");
  return p;
}

inline bool is_uniform_literal(const nlohmann::json& j) { return j.is_string() && j.get<std::string>() == "uniform"; }

}  // namespace detail

inline std::vector<double> parse_mixed_policy(const nlohmann::json& j, std::size_t n, const std::string& where) {
  if (detail::is_uniform_literal(j)) return uniform_vector(n);
  auto p = detail::read_probs(j, where);
  if (p.size() != n) {
    throw PolicyFileError(where + ": " + std::to_string(p.size()) + " probabilities for " + std::to_string(n) +
                          " strategies");
  }
  return p;
}

inline TreePolicy parse_tree_policy(const nlohmann::json& j, const GameTree& tree, int player,
                                    const std::string& where) {
  if (detail::is_uniform_literal(j)) return TreePolicy::uniform(tree, player);
  if (!j.is_object()) throw PolicyFileError(where + ": expected an object keyed by infoset or \"uniform\"");
  BehaviorPolicy::Table table;
  for (const auto& [key, value] : j.items()) table.emplace(key, detail::read_probs(value, where + " [" + key + "]"));
  for (const auto& [key, probs] : table) {
    if (!tree.find_infoset(player, key)) {
      throw PolicyFileError(where + ": '" + key + "' is not an infoset of player " + std::to_string(player));
    }
  }
  try {
    return TreePolicy::compile(tree, player, BehaviorPolicy(std::move(table)));
  } catch (const std::exception& e) {
    throw PolicyFileError(where + ": " + e.what());
  }
}

inline std::vector<double> load_mixed_policy(const std::string& path, std::size_t n) {
  return parse_mixed_policy(detail::read_json(path), n, path);
}

inline TreePolicy load_tree_policy(const std::string& path, const GameTree& tree, int player) {
  return parse_tree_policy(detail::read_json(path), tree, player, path);
}

inline nlohmann::json to_json(const BehaviorPolicy& policy) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, probs] : policy.table()) j[key] = probs;
  return j;
}

inline nlohmann::json to_json(const TreePolicy& policy) { return to_json(policy.to_behavior()); }

inline nlohmann::json to_json(std::span<const double> mixed) { return std::vector<double>(mixed.begin(), mixed.end()); }

}  // namespace sppsro::harness
