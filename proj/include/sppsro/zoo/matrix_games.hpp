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
#include <string>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/normal_form.hpp"

namespace sppsro::zoo {

/// Cyclic generalization of Rock-Paper-Scissors. Strategy i beats the
/// floor((n-1)/2) strategies preceding it cyclically and loses to the same
/// number following it; for even n the antipodal pair ties. n = 3 gives
/// the usual sign matrix with Rock, Paper, Scissors = 0, 1, 2.
inline NormalFormGame make_generalized_rps(int n) {
  if (n < 3) throw ParameterError("generalized_rps: n must be >= 3, got " + std::to_string(n));
  const int half = (n - 1) / 2;
  std::vector<double> u(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int ahead = ((i - j) % n + n) % n;
      const int behind = ((j - i) % n + n) % n;
      double v = 0.0;
      if (ahead >= 1 && ahead <= half) v = 1.0;
      if (behind >= 1 && behind <= half) v = -1.0;
      u[static_cast<std::size_t>(i * n + j)] = v;
    }
  }
  return NormalFormGame(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(u));
}

/// Entries i.i.d. uniform on [0, 1) drawn row-major from mt19937_64(seed),
/// each as (draw >> 11) * 2^-53.
inline NormalFormGame make_random_uniform(int rows, int cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw ParameterError("random_uniform: shape must be positive");
  Rng rng(seed);
  std::vector<double> u(static_cast<std::size_t>(rows * cols));
  for (auto& x : u) x = uniform01(rng);
  return NormalFormGame(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(u));
}

/// All ordered allocations of `coins` identical coins over `fields` fields, in
/// lexicographically decreasing order of the first field.
inline std::vector<std::vector<int>> blotto_allocations(int coins, int fields) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(fields), 0);
  auto rec = [&](auto&& self, int field, int left) -> void {
    if (field == fields - 1) {
      cur[static_cast<std::size_t>(field)] = left;
      out.push_back(cur);
      return;
    }
    for (int c = left; c >= 0; --c) {
      cur[static_cast<std::size_t>(field)] = c;
      self(self, field + 1, left - c);
    }
  };
  rec(rec, 0, coins);
  return out;
}

/// Colonel Blotto: payoff is fields won minus fields lost.
inline NormalFormGame make_blotto(int coins, int fields) {
  if (fields < 1 || coins < fields) {
    throw ParameterError("blotto: need coins >= fields >= 1, got coins=" + std::to_string(coins) +
                         " fields=" + std::to_string(fields));
  }
  const auto alloc = blotto_allocations(coins, fields);
  const std::size_t n = alloc.size();
  std::vector<double> u(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int net = 0;
      for (int f = 0; f < fields; ++f) {
        const int a = alloc[i][static_cast<std::size_t>(f)];
        const int b = alloc[j][static_cast<std::size_t>(f)];
        net += (a > b) - (a < b);
      }
      u[i * n + j] = net;
    }
  }
  NormalFormGame g(n, n, std::move(u));
  for (const auto& a : alloc) {
    std::string label;
    for (std::size_t f = 0; f < a.size(); ++f) {
      if (f) label += '-';
      label += std::to_string(a[f]);
    }
    g.row_labels.push_back(label);
  }
  g.col_labels = g.row_labels;
  return g;
}

inline NormalFormGame make_matching_pennies() {
  return NormalFormGame::from_rows({{1, -1}, {-1, 1}});
}

}  // namespace sppsro::zoo
