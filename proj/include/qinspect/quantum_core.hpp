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

#ifndef QINSPECT_QUANTUM_CORE_HPP_
#define QINSPECT_QUANTUM_CORE_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "qinspect/bilinear.hpp"
#include "qinspect/errors.hpp"
#include "qinspect/game_model.hpp"

namespace qinspect {

using Complex = std::complex<double>;

inline constexpr double kNormalizationTolerance = 1e-9;

// a|IW> + b|IS> + c|NW> + d|NS>. Normalization is checked to 1e-9 at
// construction and then made exact, so hand-entered decimals are accepted.
class QuantumState {
 public:
  static QuantumState FromAmplitudes(const std::array<Complex, 4>& amps,
                                     double tolerance = kNormalizationTolerance) {
    double norm2 = 0.0;
    for (const Complex& z : amps) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::kInvalidState, "amplitudes must be finite");
      }
      norm2 += std::norm(z);
    }
    if (std::abs(norm2 - 1.0) > tolerance) {
      std::ostringstream os;
      os << "sum of squared moduli is " << norm2 << ", expected 1";
      throw Error(ErrorKind::kNotNormalized, os.str());
    }
    QuantumState state;
    const double scale = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < 4; ++i) state.amps_[i] = amps[i] * scale;
    return state;
  }

  // Real nonnegative amplitudes sqrt(x_i) for a probability vector x.
  static QuantumState FromProbabilities(
      const std::array<double, 4>& probs,
      double tolerance = kNormalizationTolerance) {
    std::array<Complex, 4> amps;
    for (int i = 0; i < 4; ++i) {
      if (!(probs[i] >= 0.0)) {
        throw Error(ErrorKind::kInvalidState,
                    "outcome probabilities must be nonnegative");
      }
      amps[i] = std::sqrt(probs[i]);
    }
    return FromAmplitudes(amps, tolerance);
  }

  static QuantumState Basis(std::size_t index) {
    std::array<Complex, 4> amps{};
    amps.at(index) = 1.0;
    return FromAmplitudes(amps);
  }

  const std::array<Complex, 4>& amplitudes() const { return amps_; }
  const Complex& amplitude(std::size_t i) const { return amps_.at(i); }

  // (|a|^2, |b|^2, |c|^2, |d|^2).
  std::array<double, 4> Probabilities() const {
    return {std::norm(amps_[0]), std::norm(amps_[1]), std::norm(amps_[2]),
            std::norm(amps_[3])};
  }

  Eigen::Vector4cd AsVector() const {
    return Eigen::Vector4cd(amps_[0], amps_[1], amps_[2], amps_[3]);
  }

 private:
  QuantumState() = default;
  std::array<Complex, 4> amps_{};
};

class DensityMatrix {
 public:
  DensityMatrix() : m_(Eigen::Matrix4cd::Zero()) {}
  explicit DensityMatrix(const Eigen::Matrix4cd& m) : m_(m) {}

  const Eigen::Matrix4cd& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Complex Trace() const { return m_.trace(); }

  bool IsHermitian(double tol = 1e-12) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  // Smallest eigenvalue of the Hermitian part.
  double MinEigenvalue() const {
    const Eigen::Matrix4cd herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
        herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

  bool IsPure(double tol = 1e-10) const {
    return (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol;
  }

  std::array<double, 4> DiagonalReal() const {
    return {m_(0, 0).real(), m_(1, 1).real(), m_(2, 2).real(),
            m_(3, 3).real()};
  }

 private:
  Eigen::Matrix4cd m_;
};

// |psi><psi|
inline DensityMatrix DensityFromState(const QuantumState& state) {
  const Eigen::Vector4cd psi = state.AsVector();
  return DensityMatrix(psi * psi.adjoint());
}

namespace internal {

// Single-qubit flip C: |I> <-> |N> on the employer's qubit, |W> <-> |S> on
// the worker's.
inline Eigen::Matrix2cd FlipOperator() {
  Eigen::Matrix2cd c;
  c << 0.0, 1.0, 1.0, 0.0;
  return c;
}

// Kronecker product with the employer's qubit as the major index, matching
// the basis order (IW, IS, NW, NS).
inline Eigen::Matrix4cd Kron(const Eigen::Matrix2cd& a,
                             const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace internal

// (U_A (x) U_B) rho (U_A (x) U_B)^dagger with U = C where the flag is set.
inline DensityMatrix ApplyFlip(const DensityMatrix& density, bool flip_a,
                               bool flip_b) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd c = internal::FlipOperator();
  const Eigen::Matrix4cd u =
      internal::Kron(flip_a ? c : id, flip_b ? c : id);
  return DensityMatrix(u * density.matrix() * u.adjoint());
}

// Mixture of the four flip conjugations of the initial density matrix,
// weighted by the players' probabilities of applying the identity.
inline DensityMatrix FinalDensity(const QuantumState& state,
                                  const StrategyProfile& profile) {
  const DensityMatrix rho = DensityFromState(state);
  const double p = profile.p;
  const double q = profile.q;
  const Eigen::Matrix4cd out =
      p * q * ApplyFlip(rho, false, false).matrix() +
      p * (1 - q) * ApplyFlip(rho, false, true).matrix() +
      (1 - p) * q * ApplyFlip(rho, true, false).matrix() +
      (1 - p) * (1 - q) * ApplyFlip(rho, true, true).matrix();
  return DensityMatrix(out);
}

// Diagonal operator sum_k E(k)|k><k| over the basis outcomes.
struct PayoffOperator {
  std::array<double, 4> diagonal{};

  Eigen::Matrix4cd AsMatrix() const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = diagonal[i];
    return m;
  }
};

inline PayoffOperator MakePayoffOperator(const PayoffMatrix2x2& matrix,
                                         Player player) {
  return {matrix.Diagonal(player)};
}

inline constexpr double kTraceImagTolerance = 1e-10;

// Tr(P rho).
inline double TracePayoff(const DensityMatrix& final_density,
                          const PayoffOperator& op) {
  const Complex tr = (op.AsMatrix() * final_density.matrix()).trace();
  if (std::abs(tr.imag()) > kTraceImagTolerance) {
    std::ostringstream os;
    os << "trace payoff has imaginary residue " << tr.imag();
    throw Error(ErrorKind::kInvalidState, os.str());
  }
  return tr.real();
}

// Closed form of the trace payoff. The four flip conjugations permute the
// outcome probabilities x = (|a|^2, |b|^2, |c|^2, |d|^2); each term is the
// payoff diagonal dotted with one permutation, and collecting powers of p
// and q gives the bilinear coefficients. Generic over the scalar so the
// exact optimizer can reuse it with rationals.
template <typename T>
BasicBilinearPayoff<T> BilinearFromProbabilities(const std::array<T, 4>& diag,
                                                 const std::array<T, 4>& x) {
  const auto dot = [&diag](const T& x0, const T& x1, const T& x2,
                           const T& x3) {
    return diag[0] * x0 + diag[1] * x1 + diag[2] * x2 + diag[3] * x3;
  };
  const T keep = dot(x[0], x[1], x[2], x[3]);     // I (x) I
  const T flip_b = dot(x[1], x[0], x[3], x[2]);   // I (x) C
  const T flip_a = dot(x[2], x[3], x[0], x[1]);   // C (x) I
  const T flip_ab = dot(x[3], x[2], x[1], x[0]);  // C (x) C
  return {keep - flip_b - flip_a + flip_ab, flip_b - flip_ab,
          flip_a - flip_ab, flip_ab};
}

inline BilinearPayoff BilinearCoefficients(const PayoffMatrix2x2& matrix,
                                           const QuantumState& state,
                                           Player player) {
  return BilinearFromProbabilities(matrix.Diagonal(player),
                                   state.Probabilities());
}

}  // namespace qinspect

#endif  // QINSPECT_QUANTUM_CORE_HPP_
