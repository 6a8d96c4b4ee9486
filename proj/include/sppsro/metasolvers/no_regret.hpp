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
#include <iostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sppsro/common.hpp"

namespace sppsro {

namespace detail {

// Normalized exp(log_weights); max-shifted so large cumulative payoffs never
// overflow.
inline std::vector<double> softmax(std::span<const double> log_weights) {
  const double mx = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> p(log_weights.size());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(log_weights[i] - mx);
    s += p[i];
  }
  for (double& x : p) x /= s;
  return p;
}

}  // namespace detail

/// Multiplicative weights over a fixed set of arms with full payoff feedback.
///
/// Weights are kept as logarithms (always strictly positive once
/// exponentiated). Every update appends the post-update distribution to the
/// time-average accumulator.
class MwuState {
 public:
  explicit MwuState(std::size_t arms, double learning_rate = 0.1)
      : log_weights_(arms, 0.0), history_sum_(arms, 0.0), learning_rate_(learning_rate) {
    if (arms == 0) throw ParameterError("MwuState: needs at least one arm");
  }

  std::size_t arms() const { return log_weights_.size(); }
  double learning_rate() const { return learning_rate_; }
  std::size_t iterate_count() const { return count_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

  std::vector<double> distribution() const { return detail::softmax(log_weights_); }

  /// Arithmetic mean of every distribution recorded by update(); uniform
  /// before the first update.
  std::vector<double> time_average() const {
    if (count_ == 0) return uniform_vector(arms());
    std::vector<double> avg(history_sum_);
    for (double& x : avg) x /= static_cast<double>(count_);
    return avg;
  }

  void update(std::span<const double> payoffs) {
    if (payoffs.size() != arms()) throw ShapeError("mwu_update: payoff vector has wrong length");
    for (double x : payoffs) {
      if (!std::isfinite(x)) throw NumericError("mwu_update: non-finite payoff");
    }
    for (std::size_t k = 0; k < arms(); ++k) log_weights_[k] += learning_rate_ * payoffs[k];
    const auto p = distribution();
    for (std::size_t k = 0; k < arms(); ++k) history_sum_[k] += p[k];
    ++count_;
  }

 private:
  std::vector<double> log_weights_;
  std::vector<double> history_sum_;
  double learning_rate_;
  std::size_t count_ = 0;
};

/// Functional form of MwuState::update.
inline MwuState mwu_update(MwuState state, std::span<const double> payoffs) {
  state.update(payoffs);
  return state;
}

/// Exp3 with gamma-uniform exploration and importance-weighted rewards.
///
/// Sampling distribution p = (1 - gamma) * softmax(log w) + gamma / K. A
/// reward r in [lo, hi] is scaled to [0, 1] and the sampled arm's log-weight
/// grows by lr * gamma * r_hat / (K * p(arm)). Rewards outside the declared
/// range are clamped and counted.
class Exp3State {
 public:
  Exp3State(std::size_t arms, double learning_rate, double gamma, std::pair<double, double> reward_range)
      : log_weights_(arms, 0.0),
        history_sum_(arms, 0.0),
        learning_rate_(learning_rate),
        gamma_(gamma),
        range_(reward_range) {
    if (arms == 0) throw ParameterError("Exp3State: needs at least one arm");
    if (!(gamma_ >= 0.0 && gamma_ <= 1.0)) throw ParameterError("Exp3State: gamma must be in [0, 1]");
    if (!(range_.second > range_.first)) throw ParameterError("Exp3State: empty reward range");
  }

  std::size_t arms() const { return log_weights_.size(); }
  double gamma() const { return gamma_; }
  std::size_t iterate_count() const { return count_; }
  std::size_t clamped_rewards() const { return clamped_; }

  std::vector<double> distribution() const {
    auto p = detail::softmax(log_weights_);
    const double k = static_cast<double>(arms());
    for (double& x : p) x = (1.0 - gamma_) * x + gamma_ / k;
    return p;
  }

  std::vector<double> time_average() const {
    if (count_ == 0) return distribution();
    std::vector<double> avg(history_sum_);
    for (double& x : avg) x /= static_cast<double>(count_);
    return avg;
  }

  std::size_t sample(Rng& rng) const {
    const auto p = distribution();
    return sample_index(p, rng);
  }

  void update(std::size_t arm, double reward) {
    if (arm >= arms()) throw ShapeError("exp3_update: arm out of range");
    if (!std::isfinite(reward)) throw NumericError("exp3_update: non-finite reward");
    if (reward < range_.first || reward > range_.second) {
      if (clamped_++ == 0) {
        std::clog << "warning: exp3 reward " << reward << " outside [" << range_.first << ", "
                  << range_.second << "], clamping\n";
      }
      reward = std::clamp(reward, range_.first, range_.second);
    }
    const double scaled = (reward - range_.first) / (range_.second - range_.first);
    const double p = distribution()[arm];
    const double k = static_cast<double>(arms());
    log_weights_[arm] += learning_rate_ * gamma_ * scaled / (k * p);
    const auto next = distribution();
    for (std::size_t i = 0; i < arms(); ++i) history_sum_[i] += next[i];
    ++count_;
  }

 private:
  std::vector<double> log_weights_;
  std::vector<double> history_sum_;
  double learning_rate_;
  double gamma_;
  std::pair<double, double> range_;
  std::size_t count_ = 0;
  std::size_t clamped_ = 0;
};

inline Exp3State exp3_update(Exp3State state, std::size_t arm, double reward) {
  state.update(arm, reward);
  return state;
}

}  // namespace sppsro
