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

#ifndef MCVQA_ANALYSIS_HPP_
#define MCVQA_ANALYSIS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mcvqa/graph.hpp"

namespace mcvqa {

// Min-max normalized energy gap: (final_loss - e_min) / (e_max - e_min),
// clamped to [0, 1].  Zero exactly at the ground state, one at the highest
// excited state.  Throws std::invalid_argument when e_max == e_min.
double normalized_error(double final_loss, const GroundTruth& gt);

// One finished run, reduced to the numbers the ensemble plots need.
struct AccuracyRecord {
  std::string graph_id;
  int seed = 0;
  double beta = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  double final_loss = 0.0;
  double alpha = 0.0;     // normalized error, in [0, 1]
  double accuracy = 0.0;  // 1 - alpha
};

AccuracyRecord make_accuracy_record(std::string graph_id, int seed, double beta,
                                    double xi, double eta, double final_loss,
                                    const GroundTruth& gt);

struct GroupStats {
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population standard deviation
  int count = 0;
};

// Groups records by key_of(record) and reduces each group to mean accuracy,
// population standard deviation, and count.  The map gives a deterministic
// ordering by key.  Throws std::invalid_argument on an empty record list.
template <typename KeyFn>
auto aggregate_accuracy(const std::vector<AccuracyRecord>& records, KeyFn key_of)
    -> std::map<std::invoke_result_t<KeyFn&, const AccuracyRecord&>, GroupStats> {
  if (records.empty()) {
    throw std::invalid_argument("aggregate_accuracy: no records");
  }
  using Key = std::invoke_result_t<KeyFn&, const AccuracyRecord&>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& record : records) {
    groups[key_of(record)].push_back(record.accuracy);
  }
  std::map<Key, GroupStats> out;
  for (const auto& [key, values] : groups) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    out[key] = GroupStats{mean, std::sqrt(var), static_cast<int>(values.size())};
  }
  return out;
}

// Exponential decay fitted to (t, alpha_t) points: alpha(t) = amplitude *
// exp(-rate * t), obtained by linear least squares on log(alpha) vs t.
struct MixingFit {
  double amplitude = 0.0;
  double rate = 0.0;
  double residual = 0.0;  // sum of squared log-domain residuals
};

// Requires at least three points, at least two distinct epochs, and strictly
// positive alpha values; throws std::invalid_argument otherwise.
MixingFit fit_mixing_curve(const std::vector<std::pair<double, double>>& points);

// ln(1/sqrt(pi*)) up to the unknowable normalization: beta * (e_max - e_min)
// / 2, the log relative Boltzmann weight of the worst state, halved for the
// square root.  Only ratios across beta values are meaningful.
double pi_star_proxy(const GroundTruth& gt, double beta);

// Running minimum of a loss sequence.
std::vector<double> best_so_far(const std::vector<double>& losses);

// Mean normalized error per epoch across runs, where run r contributes the
// error of its best-so-far loss under gts[r].  All runs must be non-empty and
// share one length; throws std::invalid_argument otherwise.
std::vector<double> ensemble_error_curve(
    const std::vector<std::vector<double>>& run_losses,
    const std::vector<GroundTruth>& gts);

}  // namespace mcvqa

#endif  // MCVQA_ANALYSIS_HPP_
