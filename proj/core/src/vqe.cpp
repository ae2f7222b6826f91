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

#include "mcvqa/vqe.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>

#include "mcvqa/io_detail.hpp"

namespace mcvqa {

GradientStatistics finite_diff_gradient(const WeightedGraph& g, const Ansatz& a,
                                        const ParameterVector& theta, double epsilon,
                                        ShotCount m_shots, Rng& rng) {
  const LossStatistics at_theta =
      loss_statistics(g, prepare_state(a, theta), m_shots, rng);
  return finite_diff_gradient(g, a, theta, epsilon, m_shots, rng, at_theta);
}

GradientStatistics finite_diff_gradient(const WeightedGraph& g, const Ansatz& a,
                                        const ParameterVector& theta, double epsilon,
                                        ShotCount m_shots, Rng& rng,
                                        const LossStatistics& at_theta) {
  if (epsilon <= 0.0) {
    throw std::invalid_argument("finite_diff_gradient: epsilon must be positive");
  }
  GradientStatistics stats;
  stats.epsilon = epsilon;
  stats.gradient_variance = at_theta.loss_variance / (2.0 * epsilon * epsilon);
  stats.gradient.resize(theta.size());

  ParameterVector shifted = theta;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + epsilon;
    const double plus =
        loss_statistics(g, prepare_state(a, shifted), m_shots, rng).loss;
    shifted[k] = theta[k] - epsilon;
    const double minus =
        loss_statistics(g, prepare_state(a, shifted), m_shots, rng).loss;
    shifted[k] = theta[k];
    stats.gradient[k] = (plus - minus) / (2.0 * epsilon);
  }
  return stats;
}

ParameterVector vqe_epoch(const ParameterVector& theta,
                          const GradientStatistics& grad, double eta) {
  if (eta <= 0.0) {
    throw std::invalid_argument("vqe_epoch: eta must be positive");
  }
  if (grad.gradient.size() != theta.size()) {
    throw std::invalid_argument("vqe_epoch: gradient length mismatch");
  }
  ParameterVector next = theta;
  for (std::size_t k = 0; k < next.size(); ++k) {
    next[k] -= eta * grad.gradient[k];
  }
  return next;
}

VqeResult run_vqe(const WeightedGraph& g, const Ansatz& a, ParameterVector theta0,
                  double eta, double epsilon, int n_epochs, ShotCount m_shots,
                  Rng& rng) {
  if (n_epochs < 0) {
    throw std::invalid_argument("run_vqe: n_epochs must be non-negative");
  }
  VqeResult result;
  result.theta = std::move(theta0);
  result.trace.rows.reserve(static_cast<std::size_t>(n_epochs));
  for (int epoch = 0; epoch < n_epochs; ++epoch) {
    const LossStatistics stats =
        loss_statistics(g, prepare_state(a, result.theta), m_shots, rng);
    result.trace.rows.push_back({epoch, stats.loss, result.theta});
    const GradientStatistics grad =
        finite_diff_gradient(g, a, result.theta, epsilon, m_shots, rng, stats);
    result.theta = vqe_epoch(result.theta, grad, eta);
  }
  return result;
}

void write_vqe_trace_csv(const VqeTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "epoch,loss,phase\n";
  for (const auto& row : trace.rows) {
    out << row.epoch << ',' << detail::format_double(row.loss) << ",vqe\n";
  }
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace mcvqa
