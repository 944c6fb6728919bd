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

#ifndef QINSPECT_GAME_MODEL_HPP_
#define QINSPECT_GAME_MODEL_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>

#include "qinspect/bilinear.hpp"
#include "qinspect/errors.hpp"

namespace qinspect {

// Employer strategies: Inspect / Not inspect.
enum class RowStrategy { kI = 0, kN = 1 };
// Worker strategies: Work / Shirk.
enum class ColStrategy { kW = 0, kS = 1 };

// Index of an outcome in the fixed basis order (IW, IS, NW, NS).
constexpr std::size_t OutcomeIndex(RowStrategy row, ColStrategy col) {
  return 2 * static_cast<std::size_t>(row) + static_cast<std::size_t>(col);
}

inline constexpr std::array<const char*, 4> kOutcomeLabels = {"IW", "IS", "NW",
                                                              "NS"};

struct InspectionParams {
  double v = 0.0;  // wealth created by working
  double g = 0.0;  // worker's cost of working
  double h = 0.0;  // employer's inspection cost
  double w = 0.0;  // wage

  // Throws Error(kInvalidParameters) unless every value is positive and
  // finite with v > g, w > h, w > g.
  void Validate() const {
    std::ostringstream why;
    for (double x : {v, g, h, w}) {
      if (!std::isfinite(x) || x <= 0.0) {
        why << "all of v, g, h, w must be finite and strictly positive";
        throw Error(ErrorKind::kInvalidParameters, why.str());
      }
    }
    if (!(v > g)) why << "v > g violated; ";
    if (!(w > h)) why << "w > h violated; ";
    if (!(w > g)) why << "w > g violated; ";
    if (!why.str().empty()) {
      throw Error(ErrorKind::kInvalidParameters, why.str());
    }
  }

  friend bool operator==(const InspectionParams&,
                         const InspectionParams&) = default;
};

struct Outcome {
  double a = 0.0;  // employer's payoff
  double b = 0.0;  // worker's payoff

  double For(Player player) const { return player == Player::kA ? a : b; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Payoffs of both players over the four pure outcomes of a 2x2 game. Any
// real entries are accepted; the inspection structure is imposed only by
// BuildInspectionMatrix.
class PayoffMatrix2x2 {
 public:
  PayoffMatrix2x2() = default;

  // Cells in basis order (IW, IS, NW, NS).
  explicit PayoffMatrix2x2(const std::array<Outcome, 4>& cells)
      : cells_(cells) {
    for (const Outcome& c : cells_) {
      if (!std::isfinite(c.a) || !std::isfinite(c.b)) {
        throw Error(ErrorKind::kInvalidParameters,
                    "payoff matrix entries must be finite");
      }
    }
  }

  const Outcome& Cell(RowStrategy row, ColStrategy col) const {
    return cells_[OutcomeIndex(row, col)];
  }
  const Outcome& Cell(std::size_t basis_index) const {
    return cells_.at(basis_index);
  }
  const std::array<Outcome, 4>& cells() const { return cells_; }

  // One player's payoffs in basis order.
  std::array<double, 4> Diagonal(Player player) const {
    return {cells_[0].For(player), cells_[1].For(player),
            cells_[2].For(player), cells_[3].For(player)};
  }

  friend bool operator==(const PayoffMatrix2x2&,
                         const PayoffMatrix2x2&) = default;

 private:
  std::array<Outcome, 4> cells_{};
};

struct StrategyProfile {
  double p = 0.0;  // probability the employer plays I
  double q = 0.0;  // probability the worker plays W

  static StrategyProfile Make(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
      std::ostringstream os;
      os << "strategy profile (" << p << ", " << q << ") outside [0,1]^2";
      throw Error(ErrorKind::kInvalidParameters, os.str());
    }
    return {p, q};
  }

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
};

inline PayoffMatrix2x2 BuildInspectionMatrix(const InspectionParams& params) {
  params.Validate();
  const auto [v, g, h, w] = params;
  return PayoffMatrix2x2({Outcome{v - w - h, w - g}, Outcome{-h, 0.0},
                          Outcome{v - w, w - g}, Outcome{-w, w}});
}

// The worked instance v=60, g=15, h=8, w=20.
inline InspectionParams ReferenceParams() { return {60.0, 15.0, 8.0, 20.0}; }

// Expansion of the mixed-strategy expected payoff into bilinear form. This
// is the classical game; the quantum game reduces to it for the state |IW>.
inline BilinearPayoff ClassicalBilinear(const PayoffMatrix2x2& matrix,
                                        Player player) {
  const auto e = matrix.Diagonal(player);
  return {e[0] - e[1] - e[2] + e[3], e[1] - e[3], e[2] - e[3], e[3]};
}

inline double ClassicalExpectedPayoff(const PayoffMatrix2x2& matrix,
                                      const StrategyProfile& profile,
                                      Player player) {
  const auto e = matrix.Diagonal(player);
  const double p = profile.p;
  const double q = profile.q;
  return p * q * e[0] + p * (1 - q) * e[1] + (1 - p) * q * e[2] +
         (1 - p) * (1 - q) * e[3];
}

// Closed-form mixed equilibrium (g/w, 1 - h/w).
inline StrategyProfile ClassicalMixedNe(const InspectionParams& params) {
  params.Validate();
  return {params.g / params.w, 1.0 - params.h / params.w};
}

struct PayoffTriple {
  double a = 0.0;
  double b = 0.0;
  double joint = 0.0;
};

inline PayoffTriple ClassicalNePayoffs(const InspectionParams& params) {
  params.Validate();
  const auto [v, g, h, w] = params;
  const double a = v - w - h * v / w;
  const double b = w - g;
  return {a, b, a + b};
}

// True iff neither player can gain more than `tolerance` by a unilateral
// deviation. Payoffs are affine in each player's own mix, so the best
// deviation is always to a pure strategy and the gain follows from the sign
// of the own-strategy slope.
inline bool VerifyClassicalNe(const PayoffMatrix2x2& matrix,
                              const StrategyProfile& candidate,
                              double tolerance) {
  const BilinearPayoff pa = ClassicalBilinear(matrix, Player::kA);
  const BilinearPayoff pb = ClassicalBilinear(matrix, Player::kB);
  return DeviationGain(pa, Player::kA, candidate.p, candidate.q) <=
             tolerance &&
         DeviationGain(pb, Player::kB, candidate.q, candidate.p) <= tolerance;
}

}  // namespace qinspect

#endif  // QINSPECT_GAME_MODEL_HPP_
