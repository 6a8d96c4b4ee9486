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

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sppsro/common.hpp"

namespace sppsro {

/// Probability vector over the pure strategies of a normal-form game.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
    if (!is_distribution(probs_)) {
      throw ParameterError("MixedStrategy: not a probability vector");
    }
  }

  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy(uniform_vector(n));
  }
  static MixedStrategy pure(std::size_t n, std::size_t index) {
    return MixedStrategy(one_hot(n, index));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  std::span<const double> span() const { return probs_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

/// Zero-sum matrix game stored from the row player's point of view. The
/// column player's payoff at (i, j) is -row_payoff(i, j).
class NormalFormGame {
 public:
  NormalFormGame(std::size_t rows, std::size_t cols, std::vector<double> payoffs)
      : rows_(rows), cols_(cols), payoffs_(std::move(payoffs)) {
    if (rows_ == 0 || cols_ == 0) {
      throw ShapeError("NormalFormGame: empty shape");
    }
    if (payoffs_.size() != rows_ * cols_) {
      throw ShapeError("NormalFormGame: payoff buffer has " +
                       std::to_string(payoffs_.size()) + " entries, expected " +
                       std::to_string(rows_ * cols_));
    }
    for (double x : payoffs_) {
      if (!std::isfinite(x)) throw NumericError("NormalFormGame: non-finite payoff");
    }
  }

  static NormalFormGame from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw ShapeError("from_rows: empty");
    std::vector<double> flat;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw ShapeError("from_rows: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return NormalFormGame(rows.size(), rows.front().size(), std::move(flat));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Number of pure strategies for `player` (0 = row, 1 = column).
  std::size_t num_strategies(int player) const { return player == 0 ? rows_ : cols_; }

  double row_payoff(std::size_t i, std::size_t j) const { return payoffs_[i * cols_ + j]; }
  double payoff(int player, std::size_t i, std::size_t j) const {
    return player == 0 ? row_payoff(i, j) : -row_payoff(i, j);
  }
  const std::vector<double>& data() const { return payoffs_; }

  /// U * col: row player's value of each pure row against `col`.
  std::vector<double> row_values(std::span<const double> col) const {
    if (col.size() != cols_) throw ShapeError("row_values: column strategy has wrong length");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* r = &payoffs_[i * cols_];
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += r[j] * col[j];
      out[i] = s;
    }
    return out;
  }

  /// -U^T * row: column player's value of each pure column against `row`.
  std::vector<double> col_values(std::span<const double> row) const {
    if (row.size() != rows_) throw ShapeError("col_values: row strategy has wrong length");
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* r = &payoffs_[i * cols_];
      const double w = row[i];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) out[j] -= w * r[j];
    }
    return out;
  }

  /// Values of `player`'s pure strategies against the opponent's mixed strategy.
  std::vector<double> pure_values(int player, std::span<const double> opponent) const {
    return player == 0 ? row_values(opponent) : col_values(opponent);
  }

  /// The same game with roles exchanged: -U^T.
  NormalFormGame role_swapped() const {
    std::vector<double> t(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = -row_payoff(i, j);
    }
    return NormalFormGame(cols_, rows_, std::move(t));
  }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> payoffs_;
};

/// Row player's expected utility row^T U col.
inline double expected_value_nfg(const NormalFormGame& game, std::span<const double> row,
                                 std::span<const double> col) {
  if (row.size() != game.rows() || col.size() != game.cols()) {
    throw ShapeError("expected_value_nfg: strategy lengths (" + std::to_string(row.size()) +
                     ", " + std::to_string(col.size()) + ") do not match game shape (" +
                     std::to_string(game.rows()) + ", " + std::to_string(game.cols()) + ")");
  }
  return dot(row, game.row_values(col));
}

inline double expected_value_nfg(const NormalFormGame& game, const MixedStrategy& row,
                                 const MixedStrategy& col) {
  return expected_value_nfg(game, row.span(), col.span());
}

// -- Text format --------------------------------------------------------------
//
// One line per row strategy holding the row player's payoffs, whitespace
// separated. Blank lines and '#' comments are ignored; every row must have
// the same length.

inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline void write_nfg(std::ostream& out, const NormalFormGame& game) {
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(game.row_payoff(i, j));
    }
    out << '\n';
  }
}

inline NormalFormGame read_nfg(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      double x = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ShapeError("read_nfg: line " + std::to_string(line_no) + ": bad number '" + tok + "'");
      }
      row.push_back(x);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ShapeError("read_nfg: line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ShapeError("read_nfg: no payoff rows");
  return NormalFormGame::from_rows(rows);
}

inline NormalFormGame load_nfg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open matrix file '" + path + "'");
  return read_nfg(in);
}

inline void save_nfg(const std::string& path, const NormalFormGame& game) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write matrix file '" + path + "'");
  write_nfg(out, game);
}

}  // namespace sppsro
