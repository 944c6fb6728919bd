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

// Independent reference computations used only by tests. Nothing here calls
// the library's matrix or closed-form paths.

#ifndef QINSPECT_TESTS_ORACLES_HPP_
#define QINSPECT_TESTS_ORACLES_HPP_

#include <array>
#include <complex>
#include <random>
#include <vector>

namespace qinspect::oracle {

using C = std::complex<double>;
using Dense4 = std::array<std::array<C, 4>, 4>;

// Applies the flips to a state vector by relabelling basis indices: the
// employer's qubit is bit 1 of the index, the worker's is bit 0.
inline std::array<C, 4> FlipVector(const std::array<C, 4>& psi, bool flip_a,
                                   bool flip_b) {
  std::array<C, 4> out{};
  const int mask = (flip_a ? 2 : 0) | (flip_b ? 1 : 0);
  for (int i = 0; i < 4; ++i) out[i ^ mask] = psi[i];
  return out;
}

// Sum over the four branches of weight * |psi_k><psi_k|, by explicit loops.
inline Dense4 FinalDensity(const std::array<C, 4>& psi, double p, double q) {
  Dense4 rho{};
  const struct {
    bool fa, fb;
    double w;
  } branches[] = {{false, false, p * q},
                  {false, true, p * (1 - q)},
                  {true, false, (1 - p) * q},
                  {true, true, (1 - p) * (1 - q)}};
  for (const auto& br : branches) {
    const auto v = FlipVector(psi, br.fa, br.fb);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rho[i][j] += br.w * v[i] * std::conj(v[j]);
  }
  return rho;
}

inline double TracePayoff(const Dense4& rho, const std::array<double, 4>& diag) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += diag[i] * rho[i][i].real();
  return s;
}

inline std::array<C, 4> RandomState(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<C, 4> psi;
  double norm = 0.0;
  for (auto& z : psi) {
    z = C(n(rng), n(rng));
    norm += std::norm(z);
  }
  for (auto& z : psi) z /= std::sqrt(norm);
  return psi;
}

inline std::array<double, 4> RandomSimplex(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> x;
  double s = 0.0;
  for (auto& xi : x) s += (xi = e(rng));
  for (auto& xi : x) xi /= s;
  return x;
}

// Best payoff a player can get by a pure deviation: A picks p in {0,1}
// against q, B picks q in {0,1} against p. Evaluates the mixed-strategy
// expectation directly from the four outcome payoffs.
inline double Expected(const std::array<double, 4>& e, double p, double q) {
  return p * q * e[0] + p * (1 - q) * e[1] + (1 - p) * q * e[2] +
         (1 - p) * (1 - q) * e[3];
}

}  // namespace qinspect::oracle

#endif  // QINSPECT_TESTS_ORACLES_HPP_
