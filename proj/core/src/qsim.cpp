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

#include "mcvqa/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace mcvqa {

namespace {

void check_qubit(const Statevector& s, int q, const char* who) {
  if (q < 0 || q >= s.n_qubits()) {
    throw std::invalid_argument(std::string(who) + ": qubit index out of range");
  }
}

void ry_in_place(std::span<std::complex<double>> amps, int qubit, double angle) {
  const double c = std::cos(0.5 * angle);
  const double sn = std::sin(0.5 * angle);
  const std::size_t step = std::size_t{1} << qubit;
  const std::size_t n = amps.size();
  // The matrix is real, so real and imaginary parts transform independently;
  // processing the interleaved doubles of each paired block as two contiguous
  // spans keeps the inner loop vectorizable.  Array-oriented access to
  // std::complex storage is guaranteed by the standard.
  double* d = reinterpret_cast<double*>(amps.data());
  for (std::size_t base = 0; base < n; base += 2 * step) {
    double* p0 = d + 2 * base;
    double* p1 = d + 2 * (base + step);
    for (std::size_t j = 0; j < 2 * step; ++j) {
      const double x0 = p0[j];
      const double x1 = p1[j];
      p0[j] = c * x0 - sn * x1;
      p1[j] = sn * x0 + c * x1;
    }
  }
}

void cz_in_place(std::span<std::complex<double>> amps, int q1, int q2) {
  const std::size_t mask =
      (std::size_t{1} << q1) | (std::size_t{1} << q2);
  const std::size_t n = amps.size();
  // Enumerate exactly the indices with both control bits set.
  for (std::size_t i = mask; i < n; i = (i + 1) | mask) {
    amps[i] = -amps[i];
  }
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0 || n_qubits >= 31) {
    throw std::invalid_argument("Statevector: n_qubits must be in [1, 30]");
  }
  amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

Statevector::Statevector(std::vector<std::complex<double>> amplitudes)
    : amps_(std::move(amplitudes)) {
  const std::size_t n = amps_.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("Statevector: length must be a power of two >= 2");
  }
  n_qubits_ = std::countr_zero(n);
  if (std::abs(norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("Statevector: amplitudes are not normalized");
  }
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) {
    sum += std::norm(a);
  }
  return std::sqrt(sum);
}

Statevector apply_ry(Statevector s, int qubit, double angle) {
  check_qubit(s, qubit, "apply_ry");
  ry_in_place(s.amplitudes(), qubit, angle);
  return s;
}

Statevector apply_cz(Statevector s, int q1, int q2) {
  check_qubit(s, q1, "apply_cz");
  check_qubit(s, q2, "apply_cz");
  if (q1 == q2) {
    throw std::invalid_argument("apply_cz: qubit indices must differ");
  }
  cz_in_place(s.amplitudes(), q1, q2);
  return s;
}

Ansatz linear_entangler_ansatz(int n_qubits, int n_layers) {
  Ansatz a;
  a.n_qubits = n_qubits;
  a.n_layers = n_layers;
  for (int q = 0; q + 1 < n_qubits; ++q) {
    a.entangler_pairs.emplace_back(q, q + 1);
  }
  validate_ansatz(a);
  return a;
}

void validate_ansatz(const Ansatz& a) {
  if (a.n_qubits <= 0) {
    throw std::invalid_argument("ansatz: n_qubits must be positive");
  }
  if (a.n_layers <= 0) {
    throw std::invalid_argument("ansatz: n_layers must be positive");
  }
  for (const auto& [p, q] : a.entangler_pairs) {
    if (p < 0 || p >= a.n_qubits || q < 0 || q >= a.n_qubits || p == q) {
      throw std::invalid_argument("ansatz: entangler pair must name two distinct qubits");
    }
  }
}

Statevector prepare_state(const Ansatz& a, const ParameterVector& theta) {
  validate_ansatz(a);
  if (static_cast<int>(theta.size()) != a.parameter_count()) {
    throw std::invalid_argument("prepare_state: parameter count mismatch");
  }
  Statevector s(a.n_qubits);
  auto amps = s.amplitudes();
  for (int layer = 0; layer < a.n_layers; ++layer) {
    const std::size_t offset = static_cast<std::size_t>(layer) *
                               static_cast<std::size_t>(a.n_qubits);
    for (int q = 0; q < a.n_qubits; ++q) {
      ry_in_place(amps, q, theta[offset + static_cast<std::size_t>(q)]);
    }
    for (const auto& [p, q] : a.entangler_pairs) {
      cz_in_place(amps, p, q);
    }
  }
  return s;
}

double expectation_zz(const Statevector& s, int i, int j) {
  check_qubit(s, i, "expectation_zz");
  check_qubit(s, j, "expectation_zz");
  if (i == j) {
    throw std::invalid_argument("expectation_zz: qubit indices must differ");
  }
  const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
  double value = 0.0;
  const auto amps = s.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double p = std::norm(amps[k]);
    value += (std::popcount(k & mask) & 1) ? -p : p;
  }
  return value;
}

LossStatistics loss_statistics(const WeightedGraph& g, const Statevector& s,
                               ShotCount m_shots, Rng& rng) {
  if (m_shots.has_value() && *m_shots < 1) {
    throw std::invalid_argument("loss_statistics: shot count must be positive");
  }
  const std::size_t n_edges = g.edges.size();
  for (const Edge& edge : g.edges) {
    if (edge.a >= s.n_qubits() || edge.b >= s.n_qubits()) {
      throw std::invalid_argument("loss_statistics: graph vertex exceeds qubit count");
    }
  }

  const auto amps = s.amplitudes();
  std::vector<double> probs(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    probs[k] = std::norm(amps[k]);
  }

  // <Z_a Z_b> = p(00) - p(01) - p(10) + p(11) over the (bit_a, bit_b)
  // marginal.  Walking the four corners of each block keeps the inner loop
  // over contiguous indices.
  std::vector<double> means(n_edges, 0.0);
  for (std::size_t e = 0; e < n_edges; ++e) {
    const std::size_t lo = std::size_t{1} << std::min(g.edges[e].a, g.edges[e].b);
    const std::size_t hi = std::size_t{1} << std::max(g.edges[e].a, g.edges[e].b);
    double acc = 0.0;
    for (std::size_t top = 0; top < probs.size(); top += 2 * hi) {
      for (std::size_t mid = 0; mid < hi; mid += 2 * lo) {
        const std::size_t base = top + mid;
        for (std::size_t low = 0; low < lo; ++low) {
          acc += probs[base + low] - probs[base + lo + low] -
                 probs[base + hi + low] + probs[base + hi + lo + low];
        }
      }
    }
    means[e] = acc;
  }

  LossStatistics out;
  out.m_shots = m_shots;
  out.term_means.resize(n_edges);
  out.term_variances.resize(n_edges);
  for (std::size_t e = 0; e < n_edges; ++e) {
    const double w = g.edges[e].weight;
    double mean = std::clamp(means[e], -1.0, 1.0);
    if (m_shots.has_value()) {
      // M-shot estimator of <ZZ>: normal with the single-shot variance
      // shrunk by M, clamped back into the physical range.
      const double sd =
          std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(*m_shots));
      mean = std::clamp(mean + sd * rng.normal(), -1.0, 1.0);
    }
    out.term_means[e] = mean;
    out.term_variances[e] = w * w * (1.0 - mean * mean);
    out.loss += w * mean;
  }
  if (m_shots.has_value()) {
    double var = 0.0;
    for (const double tv : out.term_variances) {
      var += tv;
    }
    out.loss_variance = var / static_cast<double>(*m_shots);
  }
  return out;
}

std::string amplitudes_to_json(const Statevector& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : s.amplitudes()) {
    j.push_back({a.real(), a.imag()});
  }
  return j.dump() + "\n";
}

}  // namespace mcvqa
