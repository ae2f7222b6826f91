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

#ifndef MCVQA_MCMC_HPP_
#define MCVQA_MCMC_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcvqa/graph.hpp"
#include "mcvqa/qsim.hpp"
#include "mcvqa/rng.hpp"
#include "mcvqa/vqe.hpp"

namespace mcvqa {

// Hyperparameters of one Markov chain plus its closing descent.
struct ChainConfig {
  double beta = 0.2;       // inverse temperature of the Boltzmann target
  double xi = 0.0;         // proposal noise scale
  double eta = 0.1;        // learning rate (drift term and closing descent)
  double epsilon = 1e-2;   // finite-difference shift
  ShotCount m_shots = kExact;
  int t_mc = 0;            // Metropolis-Hastings epochs
  int t_close = 0;         // closing gradient-descent epochs
  // Learning rate for the closing phase; defaults to `eta` when unset.
  std::optional<double> closing_eta;

  double closing_eta_or_default() const { return closing_eta.value_or(eta); }
};

// Throws std::invalid_argument on any violated constraint.  xi may be zero
// only when t_mc == 0: a noiseless proposal is a point mass and the chain
// degenerates to plain gradient descent.
void validate_chain_config(const ChainConfig& cfg);

// Everything the acceptance ratio needs to know about one endpoint.
struct EndpointEvaluation {
  ParameterVector theta;
  double loss = 0.0;
  double loss_variance = 0.0;
  std::vector<double> gradient;
};

// Produces a full endpoint evaluation at a given parameter vector.  The chain
// engine is written against this interface so it can be exercised with cheap
// synthetic losses as well as with the statevector simulator.
using EndpointEvaluator = std::function<EndpointEvaluation(const ParameterVector&)>;

// Evaluator backed by the statevector simulator: loss and variance from
// loss_statistics, gradient from central finite differences.  The rng
// reference must outlive the returned function.
EndpointEvaluator make_circuit_evaluator(const WeightedGraph& g, const Ansatz& a,
                                         const ChainConfig& cfg, Rng& rng);

// Log of the unnormalized Boltzmann weight, -beta * loss.  The partition
// function never enters: only weight ratios are ever used.
double boltzmann_log_weight(double loss, double beta);

// One proposal draw: theta' = theta - eta * gradient + xi * z with z ~ N(0,1)
// componentwise.  Consumes exactly theta.size() normal variates.
ParameterVector draw_candidate(const EndpointEvaluation& current,
                               const ChainConfig& cfg, Rng& rng);

// Log density of proposing `to_theta` from the endpoint `from`.  Each
// component is Gaussian in (from.theta_k - to_theta_k) with mean
// eta * from.gradient_k and variance xi^2 + eta^2 * from.loss_variance /
// (2 epsilon^2).  The reverse density is obtained by exchanging endpoints.
// Throws std::invalid_argument if the total variance is zero.
double proposal_log_density(const EndpointEvaluation& from,
                            const ParameterVector& to_theta,
                            const ChainConfig& cfg);

// Log of the Metropolis-Hastings acceptance probability,
// min(0, [-beta l' + log g(theta|theta')] - [-beta l + log g(theta'|theta)]).
double acceptance_log_ratio(const EndpointEvaluation& current,
                            const EndpointEvaluation& candidate,
                            const ChainConfig& cfg);

struct StepRecord {
  double loss = 0.0;           // current-state loss entering the step
  double proposed_loss = 0.0;
  double log_accept_ratio = 0.0;
  bool accepted = false;
};

// One Metropolis-Hastings transition: draw a candidate, evaluate it, accept
// iff u < exp(log ratio) with u ~ U[0,1).  On reject the returned state is
// the input state unchanged.
std::pair<EndpointEvaluation, StepRecord> mh_step(const EndpointEvaluation& state,
                                                  const EndpointEvaluator& evaluate,
                                                  const ChainConfig& cfg, Rng& rng);

enum class ChainPhase { kMarkov, kClosing };

std::string to_string(ChainPhase phase);
ChainPhase chain_phase_from_string(const std::string& s);

struct ChainTrace {
  struct Row {
    int epoch = 0;
    ChainPhase phase = ChainPhase::kMarkov;
    double loss = 0.0;           // loss of the current state entering the epoch
    double proposed_loss = 0.0;  // equals loss in the closing phase
    double log_accept_ratio = 0.0;
    bool accepted = false;
  };
  std::vector<Row> rows;
  ParameterVector theta_min;  // lowest-loss state visited, either phase
  double lambda_min = 0.0;
};

struct ChainResult {
  ParameterVector theta;  // end point of the closing descent
  ChainTrace trace;
};

// t_mc Metropolis-Hastings epochs from theta0, then t_close gradient-descent
// epochs warm-started from the lowest-loss state found.  Ties in the minimum
// break toward the earliest epoch.  With t_mc == 0 this is plain VQE.
ChainResult run_mcmc_vqa(const WeightedGraph& g, const Ansatz& a,
                         ParameterVector theta0, const ChainConfig& cfg, Rng& rng);

void write_chain_trace_csv(const ChainTrace& trace,
                           const std::filesystem::path& path);

// Reads rows back from CSV; theta_min is not stored in the CSV, so the
// returned trace carries an empty theta_min and lambda_min recomputed from
// the loss column.
ChainTrace read_chain_trace_csv(const std::filesystem::path& path);

}  // namespace mcvqa

#endif  // MCVQA_MCMC_HPP_
