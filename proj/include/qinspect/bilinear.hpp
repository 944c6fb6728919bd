// Copyright 2026 The qinspect Authors
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

#ifndef QINSPECT_BILINEAR_HPP_
#define QINSPECT_BILINEAR_HPP_

#include <algorithm>

namespace qinspect {

enum class Player { kA, kB };

inline const char* PlayerName(Player player) {
  return player == Player::kA ? "A" : "B";
}

// Expected payoff of one player written as alpha*p*q + beta*p + gamma*q + delta,
// where p is the employer's probability of I and q the worker's probability
// of W.
template <typename T>
struct BasicBilinearPayoff {
  T alpha{};
  T beta{};
  T gamma{};
  T delta{};

  T Evaluate(const T& p, const T& q) const {
    return alpha * p * q + beta * p + gamma * q + delta;
  }

  // d/dp of the payoff at fixed q. Only meaningful for player A's payoff.
  T SlopeInP(const T& q) const { return alpha * q + beta; }

  // d/dq of the payoff at fixed p. Only meaningful for player B's payoff.
  T SlopeInQ(const T& p) const { return alpha * p + gamma; }

  // Slope of this payoff in the owning player's own strategy variable.
  T OwnSlope(Player owner, const T& opponent_mix) const {
    return owner == Player::kA ? SlopeInP(opponent_mix)
                               : SlopeInQ(opponent_mix);
  }

  friend bool operator==(const BasicBilinearPayoff&,
                         const BasicBilinearPayoff&) = default;
};

using BilinearPayoff = BasicBilinearPayoff<double>;

// Largest payoff gain `owner` can get by deviating unilaterally from
// own_mix, given the other player's mix. Never negative.
inline double DeviationGain(const BilinearPayoff& payoff, Player owner,
                            double own_mix, double opponent_mix) {
  const double slope = payoff.OwnSlope(owner, opponent_mix);
  return std::max({0.0, (1.0 - own_mix) * slope, -own_mix * slope});
}

}  // namespace qinspect

#endif  // QINSPECT_BILINEAR_HPP_
