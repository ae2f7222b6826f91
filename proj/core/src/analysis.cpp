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

#include "mcvqa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcvqa {

double normalized_error(double final_loss, const GroundTruth& gt) {
  const double span = gt.e_max - gt.e_min;
  if (!(span > 0.0)) {
    throw std::invalid_argument("normalized_error: e_max must exceed e_min");
  }
  return std::clamp((final_loss - gt.e_min) / span, 0.0, 1.0);
}

AccuracyRecord make_accuracy_record(std::string graph_id, int seed, double beta,
                                    double xi, double eta, double final_loss,
                                    const GroundTruth& gt) {
  AccuracyRecord record;
  record.graph_id = std::move(graph_id);
  record.seed = seed;
  record.beta = beta;
  record.xi = xi;
  record.eta = eta;
  record.final_loss = final_loss;
  record.alpha = normalized_error(final_loss, gt);
  record.accuracy = 1.0 - record.alpha;
  return record;
}

MixingFit fit_mixing_curve(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_mixing_curve: need at least three points");
  }
  const auto n = static_cast<double>(points.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (const auto& [t, alpha] : points) {
    if (!(alpha > 0.0)) {
      throw std::invalid_argument("fit_mixing_curve: alpha values must be positive");
    }
    t_mean += t;
    y_mean += std::log(alpha);
  }
  t_mean /= n;
  y_mean /= n;

  double stt = 0.0;
  double sty = 0.0;
  for (const auto& [t, alpha] : points) {
    const double dt = t - t_mean;
    stt += dt * dt;
    sty += dt * (std::log(alpha) - y_mean);
  }
  if (!(stt > 0.0)) {
    throw std::invalid_argument("fit_mixing_curve: epochs are all identical");
  }
  const double slope = sty / stt;
  const double intercept = y_mean - slope * t_mean;

  MixingFit fit;
  fit.amplitude = std::exp(intercept);
  fit.rate = -slope;
  fit.residual = 0.0;
  for (const auto& [t, alpha] : points) {
    const double r = std::log(alpha) - (intercept + slope * t);
    fit.residual += r * r;
  }
  return fit;
}

double pi_star_proxy(const GroundTruth& gt, double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("pi_star_proxy: beta must be positive");
  }
  return beta * (gt.e_max - gt.e_min) / 2.0;
}

std::vector<double> best_so_far(const std::vector<double>& losses) {
  std::vector<double> best(losses.size());
  double current = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < losses.size(); ++i) {
    current = std::min(current, losses[i]);
    best[i] = current;
  }
  return best;
}

std::vector<double> ensemble_error_curve(
    const std::vector<std::vector<double>>& run_losses,
    const std::vector<GroundTruth>& gts) {
  if (run_losses.empty()) {
    throw std::invalid_argument("ensemble_error_curve: no runs");
  }
  if (gts.size() != run_losses.size()) {
    throw std::invalid_argument(
        "ensemble_error_curve: one ground truth required per run");
  }
  const std::size_t length = run_losses.front().size();
  if (length == 0) {
    throw std::invalid_argument("ensemble_error_curve: empty runs");
  }
  std::vector<double> curve(length, 0.0);
  for (std::size_t r = 0; r < run_losses.size(); ++r) {
    if (run_losses[r].size() != length) {
      throw std::invalid_argument("ensemble_error_curve: run lengths differ");
    }
    const std::vector<double> best = best_so_far(run_losses[r]);
    for (std::size_t t = 0; t < length; ++t) {
      curve[t] += normalized_error(best[t], gts[r]);
    }
  }
  for (double& value : curve) {
    value /= static_cast<double>(run_losses.size());
  }
  return curve;
}

}  // namespace mcvqa
