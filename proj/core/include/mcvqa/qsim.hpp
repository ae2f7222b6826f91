// Copyright 2026 The mcvqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCVQA_QSIM_HPP_
#define MCVQA_QSIM_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcvqa/graph.hpp"
#include "mcvqa/rng.hpp"

namespace mcvqa {

/// Measurements per observable. Empty means exact expectation values (the
/// large-M limit), in which case no sampling noise is injected anywhere.
using ShotCount = std::optional<std::int64_t>;
inline constexpr ShotCount kExact = std::nullopt;

/// Dense n-qubit state, 2^n complex amplitudes. Amplitude index bit k is the
/// basis value of qubit k (little-endian), so index 0 is |0...0>.
class Statevector {
 public:
  /// |0...0> on n qubits.
  explicit Statevector(int n_qubits);

  /// Adopts amplitudes; the length must be a power of two and the norm must
  /// be 1 within 1e-9.
  explicit Statevector(std::vector<std::complex<double>> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::span<std::complex<double>> amplitudes() { return amps_; }
  const std::complex<double>& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

 private:
  int n_qubits_ = 0;
  std::vector<std::complex<double>> amps_;
};

/// Rotation about the y axis, exp(-i angle Y / 2). From |0> this gives
/// <Z> = cos(angle).
Statevector apply_ry(Statevector s, int qubit, double angle);

/// Controlled-Z: negates amplitudes with both qubits set. Self-inverse.
Statevector apply_cz(Statevector s, int q1, int q2);

/// Circuit layout: per layer, one RY rotation on every qubit followed by CZ
/// gates on entangler_pairs. One trainable angle per rotation.
struct Ansatz {
  int n_qubits = 0;
  std::vector<std::pair<int, int>> entangler_pairs;
  int n_layers = 1;

  int parameter_count() const { return n_qubits * n_layers; }
};

/// CZ gates on the nearest-neighbor chain (0,1), (1,2), ..., (n-2, n-1).
Ansatz linear_entangler_ansatz(int n_qubits, int n_layers = 1);

void validate_ansatz(const Ansatz& a);

/// Circuit angles in radians, length = ansatz parameter count. Also the
/// state-space point of the Markov chain.
using ParameterVector = std::vector<double>;

/// Applies the ansatz to |0...0>. The angle for qubit q in layer l is
/// theta[l * n_qubits + q].
Statevector prepare_state(const Ansatz& a, const ParameterVector& theta);

/// <Z_i Z_j>, always in [-1, 1].
double expectation_zz(const Statevector& s, int i, int j);

/// Loss value and per-term measurement statistics of the Ising observables.
///
/// term_means hold the (estimated) <Z_a Z_b> per edge; term_variances the
/// single-shot variance w^2 (1 - mean^2) per edge; loss_variance their sum
/// over M, which is the variance of the loss estimate (zero in exact mode).
struct LossStatistics {
  double loss = 0.0;
  std::vector<double> term_means;
  std::vector<double> term_variances;
  double loss_variance = 0.0;
  ShotCount m_shots;
};

/// Exact mode reports the true expectation values and a zero loss_variance.
/// Finite-M mode draws each term mean from the normal law of the M-shot
/// estimator (clamped to [-1, 1]) and recomputes the variances from the
/// sampled means.
LossStatistics loss_statistics(const WeightedGraph& g, const Statevector& s,
                               ShotCount m_shots, Rng& rng);

/// Debug dump: JSON array of [re, im] pairs.
std::string amplitudes_to_json(const Statevector& s);

}  // namespace mcvqa

#endif  // MCVQA_QSIM_HPP_
