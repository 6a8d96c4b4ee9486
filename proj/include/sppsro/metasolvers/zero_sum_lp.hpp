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
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sppsro/common.hpp"
#include "sppsro/game/normal_form.hpp"
#include "sppsro/oracles/exact_best_response.hpp"

namespace sppsro {

struct NashSolution {
  MixedStrategy row;
  MixedStrategy col;
  double value = 0.0;  // row player's game value
};

namespace detail {

/// Dense tableau simplex for   max 1^T y  s.t.  A y <= 1, y >= 0   with A > 0.
/// Bland's rule on both the entering and leaving choice, so it cannot cycle.
/// Returns y and the dual x (the objective-row entries of the slacks).
struct PackingLpResult {
  std::vector<double> primal;
  std::vector<double> dual;
  double objective = 0.0;
  int pivots = 0;
};

inline PackingLpResult solve_packing_lp(const std::vector<double>& a, std::size_t k, std::size_t m) {
  const std::size_t cols = m + k + 1;  // structural, slack, rhs
  std::vector<double> t((k + 1) * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * cols + c]; };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) at(i, j) = a[i * m + j];
    at(i, m + i) = 1.0;
    at(i, cols - 1) = 1.0;
  }
  for (std::size_t j = 0; j < m; ++j) at(k, j) = -1.0;
  std::vector<std::size_t> basis(k);
  for (std::size_t i = 0; i < k; ++i) basis[i] = m + i;

  constexpr double kEps = 1e-12;
  const int max_pivots = 50 * static_cast<int>(k + m) + 1000;
  PackingLpResult out;
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (at(k, j) < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = k;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double coef = at(i, enter);
      if (coef <= kEps) continue;
      const double ratio = at(i, cols - 1) / coef;
      if (ratio < best_ratio - kEps ||
          (std::abs(ratio - best_ratio) <= kEps && leave < k && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == k) throw SolverError("zero-sum LP: unbounded tableau (matrix not positive?)");
    const double piv = at(leave, enter);
    for (std::size_t c = 0; c < cols; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r <= k; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
    if (++out.pivots > max_pivots) {
      throw SolverError("zero-sum LP: pivot limit " + std::to_string(max_pivots) + " exceeded on " +
                        std::to_string(k) + "x" + std::to_string(m) + " game");
    }
  }
  out.primal.assign(m, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (basis[i] < m) out.primal[basis[i]] = std::max(0.0, at(i, cols - 1));
  }
  out.dual.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) out.dual[i] = std::max(0.0, at(k, m + i));
  out.objective = at(k, cols - 1);
  return out;
}

inline std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  if (!(s > 0.0)) throw SolverError("zero-sum LP: degenerate solution vector");
  for (double& x : v) x /= s;
  return v;
}

}  // namespace detail

/// Nash equilibrium of a zero-sum matrix game by linear programming.
///
/// The matrix is shifted to be strictly positive, the column player's packing
/// LP is solved with Bland's-rule simplex, and the row strategy is read off
/// the dual. The result is certified by an exact best-response check; a
/// profile with exploitability above 1e-6 (scaled by the payoff magnitude)
/// raises SolverError.
inline NashSolution exact_nash_zero_sum(const NormalFormGame& game) {
  const std::size_t k = game.rows(), m = game.cols();
  double lo = game.data().front(), hi = lo;
  for (double x : game.data()) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double shift = 1.0 - lo;
  std::vector<double> a(game.data());
  for (double& x : a) x += shift;
  auto lp = detail::solve_packing_lp(a, k, m);
  if (!(lp.objective > 0.0)) throw SolverError("zero-sum LP: non-positive objective");

  NashSolution sol{MixedStrategy(detail::normalized(lp.dual)), MixedStrategy(detail::normalized(lp.primal)),
                   1.0 / lp.objective - shift};
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double gap = exact_br_nfg(game, sol.col, 0).value + exact_br_nfg(game, sol.row, 1).value;
  if (gap > 1e-6 * scale) {
    std::ostringstream msg;
    msg << "zero-sum LP: certificate failed on " << k << "x" << m << " game: exploitability " << gap
        << ", payoff range [" << lo << ", " << hi << "], " << lp.pivots << " pivots";
    throw SolverError(msg.str());
  }
  return sol;
}

/// Simultaneous fictitious play from uniform initial beliefs. Each round both
/// players best-respond (lowest index on ties) to the other's empirical
/// average, which counts the uniform prior as the first observation.
inline std::pair<MixedStrategy, MixedStrategy> fictitious_play(const NormalFormGame& game, int iterations) {
  if (iterations < 1) throw ParameterError("fictitious_play: iterations must be >= 1");
  std::vector<double> x = uniform_vector(game.rows());
  std::vector<double> y = uniform_vector(game.cols());
  for (int t = 1; t <= iterations; ++t) {
    const std::size_t a = exact_br_nfg(game, y, 0).index;
    const std::size_t b = exact_br_nfg(game, x, 1).index;
    const double step = 1.0 / static_cast<double>(t + 1);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += step * ((i == a ? 1.0 : 0.0) - x[i]);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += step * ((j == b ? 1.0 : 0.0) - y[j]);
  }
  return {MixedStrategy(detail::normalized(x)), MixedStrategy(detail::normalized(y))};
}

}  // namespace sppsro
