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

#ifndef MCVQA_VQE_HPP_
#define MCVQA_VQE_HPP_

#include <filesystem>
#include <vector>

#include "mcvqa/graph.hpp"
#include "mcvqa/qsim.hpp"

namespace mcvqa {

/// Central-difference loss gradient plus its sampling statistics.
/// gradient_variance is the per-component variance of the estimate,
/// loss_variance(theta) / (2 epsilon^2); it is zero in exact mode.
struct GradientStatistics {
  std::vector<double> gradient;
  double gradient_variance = 0.0;
  double epsilon = 0.0;
};

/// (loss(theta + eps e_k) - loss(theta - eps e_k)) / 2 eps per component.
/// Evaluates the loss at theta internally for the variance bookkeeping; use
/// the overload below when those statistics are already at hand.
GradientStatistics finite_diff_gradient(const WeightedGraph& g, const Ansatz& a,
                                        const ParameterVector& theta, double epsilon,
                                        ShotCount m_shots, Rng& rng);

GradientStatistics finite_diff_gradient(const WeightedGraph& g, const Ansatz& a,
                                        const ParameterVector& theta, double epsilon,
                                        ShotCount m_shots, Rng& rng,
                                        const LossStatistics& at_theta);

/// Plain gradient-descent update theta - eta * gradient.
ParameterVector vqe_epoch(const ParameterVector& theta,
                          const GradientStatistics& grad, double eta);

/// Per-epoch record of a descent run. Row t holds the loss at the parameters
/// entering epoch t, before the update.
struct VqeTrace {
  struct Row {
    int epoch = 0;
    double loss = 0.0;
    ParameterVector theta;
  };
  std::vector<Row> rows;
};

struct VqeResult {
  ParameterVector theta;
  VqeTrace trace;
};

VqeResult run_vqe(const WeightedGraph& g, const Ansatz& a, ParameterVector theta0,
                  double eta, double epsilon, int n_epochs, ShotCount m_shots,
                  Rng& rng);

/// CSV columns: epoch, loss, phase (always "vqe").
void write_vqe_trace_csv(const VqeTrace& trace, const std::filesystem::path& path);

}  // namespace mcvqa

#endif  // MCVQA_VQE_HPP_
