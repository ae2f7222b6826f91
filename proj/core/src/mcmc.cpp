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

#include "mcvqa/mcmc.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mcvqa/io_detail.hpp"

namespace mcvqa {

namespace {

double parse_double_field(const std::string& field, const std::filesystem::path& path) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::runtime_error("malformed number '" + field + "' in " + path.string());
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

void validate_chain_config(const ChainConfig& cfg) {
  if (!(cfg.beta > 0.0)) {
    throw std::invalid_argument("chain config: beta must be positive");
  }
  if (!(cfg.xi >= 0.0)) {
    throw std::invalid_argument("chain config: xi must be non-negative");
  }
  if (!(cfg.eta > 0.0)) {
    throw std::invalid_argument("chain config: eta must be positive");
  }
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("chain config: epsilon must be positive");
  }
  if (cfg.m_shots.has_value() && *cfg.m_shots < 1) {
    throw std::invalid_argument("chain config: m_shots must be positive");
  }
  if (cfg.t_mc < 0) {
    throw std::invalid_argument("chain config: t_mc must be non-negative");
  }
  if (cfg.t_close < 0) {
    throw std::invalid_argument("chain config: t_close must be non-negative");
  }
  if (cfg.t_mc > 0 && !(cfg.xi > 0.0)) {
    throw std::invalid_argument("chain config: xi must be positive when t_mc > 0");
  }
  if (cfg.closing_eta.has_value() && !(*cfg.closing_eta > 0.0)) {
    throw std::invalid_argument("chain config: closing_eta must be positive");
  }
}

EndpointEvaluator make_circuit_evaluator(const WeightedGraph& g, const Ansatz& a,
                                         const ChainConfig& cfg, Rng& rng) {
  return [g, a, cfg, &rng](const ParameterVector& theta) {
    EndpointEvaluation e;
    e.theta = theta;
    const LossStatistics stats =
        loss_statistics(g, prepare_state(a, theta), cfg.m_shots, rng);
    e.loss = stats.loss;
    e.loss_variance = stats.loss_variance;
    GradientStatistics grad =
        finite_diff_gradient(g, a, theta, cfg.epsilon, cfg.m_shots, rng, stats);
    e.gradient = std::move(grad.gradient);
    return e;
  };
}

double boltzmann_log_weight(double loss, double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("boltzmann_log_weight: beta must be positive");
  }
  return -beta * loss;
}

ParameterVector draw_candidate(const EndpointEvaluation& current,
                               const ChainConfig& cfg, Rng& rng) {
  if (current.gradient.size() != current.theta.size()) {
    throw std::invalid_argument("draw_candidate: gradient length mismatch");
  }
  ParameterVector candidate = current.theta;
  for (std::size_t k = 0; k < candidate.size(); ++k) {
    candidate[k] += -cfg.eta * current.gradient[k] + cfg.xi * rng.normal();
  }
  return candidate;
}

double proposal_log_density(const EndpointEvaluation& from,
                            const ParameterVector& to_theta,
                            const ChainConfig& cfg) {
  if (from.gradient.size() != from.theta.size() ||
      to_theta.size() != from.theta.size()) {
    throw std::invalid_argument("proposal_log_density: length mismatch");
  }
  const double variance =
      cfg.xi * cfg.xi +
      cfg.eta * cfg.eta * from.loss_variance / (2.0 * cfg.epsilon * cfg.epsilon);
  if (!(variance > 0.0)) {
    throw std::invalid_argument("proposal_log_density: total variance is zero");
  }
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * variance);
  double total = 0.0;
  for (std::size_t k = 0; k < to_theta.size(); ++k) {
    const double x = from.theta[k] - to_theta[k];
    const double centered = x - cfg.eta * from.gradient[k];
    total += log_norm - centered * centered / (2.0 * variance);
  }
  return total;
}

double acceptance_log_ratio(const EndpointEvaluation& current,
                            const EndpointEvaluation& candidate,
                            const ChainConfig& cfg) {
  const double forward = proposal_log_density(current, candidate.theta, cfg);
  const double reverse = proposal_log_density(candidate, current.theta, cfg);
  const double log_ratio =
      (boltzmann_log_weight(candidate.loss, cfg.beta) + reverse) -
      (boltzmann_log_weight(current.loss, cfg.beta) + forward);
  return std::min(0.0, log_ratio);
}

std::pair<EndpointEvaluation, StepRecord> mh_step(const EndpointEvaluation& state,
                                                  const EndpointEvaluator& evaluate,
                                                  const ChainConfig& cfg, Rng& rng) {
  const ParameterVector proposed = draw_candidate(state, cfg, rng);
  EndpointEvaluation candidate = evaluate(proposed);
  const double log_ratio = acceptance_log_ratio(state, candidate, cfg);
  const double u = rng.uniform();
  const bool accepted = u < std::exp(log_ratio);
  StepRecord record{state.loss, candidate.loss, log_ratio, accepted};
  if (accepted) {
    return {std::move(candidate), record};
  }
  return {state, record};
}

std::string to_string(ChainPhase phase) {
  switch (phase) {
    case ChainPhase::kMarkov:
      return "markov";
    case ChainPhase::kClosing:
      return "closing";
  }
  throw std::invalid_argument("to_string: unknown chain phase");
}

ChainPhase chain_phase_from_string(const std::string& s) {
  if (s == "markov") return ChainPhase::kMarkov;
  if (s == "closing") return ChainPhase::kClosing;
  throw std::invalid_argument("unknown chain phase '" + s + "'");
}

ChainResult run_mcmc_vqa(const WeightedGraph& g, const Ansatz& a,
                         ParameterVector theta0, const ChainConfig& cfg, Rng& rng) {
  validate_chain_config(cfg);
  ChainResult result;
  ChainTrace& trace = result.trace;
  trace.rows.reserve(static_cast<std::size_t>(cfg.t_mc + cfg.t_close));
  trace.theta_min = theta0;
  trace.lambda_min = std::numeric_limits<double>::infinity();

  if (cfg.t_mc > 0) {
    const EndpointEvaluator evaluate = make_circuit_evaluator(g, a, cfg, rng);
    EndpointEvaluation state = evaluate(theta0);
    trace.lambda_min = state.loss;
    for (int t = 0; t < cfg.t_mc; ++t) {
      auto [next, record] = mh_step(state, evaluate, cfg, rng);
      trace.rows.push_back({t, ChainPhase::kMarkov, record.loss,
                            record.proposed_loss, record.log_accept_ratio,
                            record.accepted});
      state = std::move(next);
      if (state.loss < trace.lambda_min) {
        trace.lambda_min = state.loss;
        trace.theta_min = state.theta;
      }
    }
  }

  if (cfg.t_close > 0) {
    VqeResult closing =
        run_vqe(g, a, trace.theta_min, cfg.closing_eta_or_default(), cfg.epsilon,
                cfg.t_close, cfg.m_shots, rng);
    for (const auto& row : closing.trace.rows) {
      trace.rows.push_back({cfg.t_mc + row.epoch, ChainPhase::kClosing, row.loss,
                            row.loss, 0.0, true});
      if (row.loss < trace.lambda_min) {
        trace.lambda_min = row.loss;
        trace.theta_min = row.theta;
      }
    }
    result.theta = std::move(closing.theta);
  } else {
    result.theta = trace.theta_min;
  }

  if (cfg.t_mc == 0 && cfg.t_close == 0) {
    trace.lambda_min =
        loss_statistics(g, prepare_state(a, theta0), cfg.m_shots, rng).loss;
  }
  return result;
}

void write_chain_trace_csv(const ChainTrace& trace,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "epoch,phase,loss,proposed_loss,log_accept_ratio,accepted\n";
  for (const auto& row : trace.rows) {
    out << row.epoch << ',' << to_string(row.phase) << ','
        << detail::format_double(row.loss) << ','
        << detail::format_double(row.proposed_loss) << ','
        << detail::format_double(row.log_accept_ratio) << ','
        << (row.accepted ? '1' : '0') << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

ChainTrace read_chain_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) ||
      line != "epoch,phase,loss,proposed_loss,log_accept_ratio,accepted") {
    throw std::runtime_error("unexpected trace header in " + path.string());
  }
  ChainTrace trace;
  trace.lambda_min = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw std::runtime_error("malformed trace row in " + path.string());
    }
    ChainTrace::Row row;
    row.epoch = static_cast<int>(parse_double_field(fields[0], path));
    row.phase = chain_phase_from_string(fields[1]);
    row.loss = parse_double_field(fields[2], path);
    row.proposed_loss = parse_double_field(fields[3], path);
    row.log_accept_ratio = parse_double_field(fields[4], path);
    if (fields[5] == "1") {
      row.accepted = true;
    } else if (fields[5] == "0") {
      row.accepted = false;
    } else {
      throw std::runtime_error("malformed accepted flag in " + path.string());
    }
    trace.rows.push_back(row);
    if (row.loss < trace.lambda_min) {
      trace.lambda_min = row.loss;
    }
  }
  if (trace.rows.empty()) {
    trace.lambda_min = 0.0;
  }
  return trace;
}

}  // namespace mcvqa
