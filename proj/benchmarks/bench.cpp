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

// Microbenchmarks for the hot paths of a sweep cell: state preparation,
// loss evaluation, gradients, one Metropolis-Hastings epoch, and the
// brute-force solver.

#include <benchmark/benchmark.h>

#include "mcvqa/graph.hpp"
#include "mcvqa/mcmc.hpp"
#include "mcvqa/qsim.hpp"
#include "mcvqa/rng.hpp"
#include "mcvqa/vqe.hpp"

namespace {

mcvqa::WeightedGraph make_graph(int n, int m, std::uint64_t seed) {
  mcvqa::Rng rng(seed);
  return mcvqa::generate_random_graph(n, m, rng);
}

mcvqa::ParameterVector make_theta(int count, std::uint64_t seed) {
  mcvqa::Rng rng(seed);
  mcvqa::ParameterVector theta(count);
  for (double& t : theta) t = 6.28318 * (rng.uniform() - 0.5);
  return theta;
}

void BM_PrepareState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mcvqa::Ansatz a = mcvqa::linear_entangler_ansatz(n, 1);
  const mcvqa::ParameterVector theta = make_theta(n, 21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcvqa::prepare_state(a, theta));
  }
}
BENCHMARK(BM_PrepareState)->Arg(10)->Arg(16);

void BM_LossStatisticsExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mcvqa::WeightedGraph g = make_graph(n, n, 22);
  const mcvqa::Ansatz a = mcvqa::linear_entangler_ansatz(n, 1);
  const mcvqa::Statevector s =
      mcvqa::prepare_state(a, make_theta(n, 23));
  mcvqa::Rng rng(24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcvqa::loss_statistics(g, s, mcvqa::kExact, rng));
  }
}
BENCHMARK(BM_LossStatisticsExact)->Arg(10)->Arg(16);

void BM_FiniteDiffGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mcvqa::WeightedGraph g = make_graph(n, n, 25);
  const mcvqa::Ansatz a = mcvqa::linear_entangler_ansatz(n, 1);
  const mcvqa::ParameterVector theta = make_theta(n, 26);
  mcvqa::Rng rng(27);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mcvqa::finite_diff_gradient(g, a, theta, 1e-3, mcvqa::kExact, rng));
  }
}
BENCHMARK(BM_FiniteDiffGradient)->Arg(10);

void BM_MhStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mcvqa::WeightedGraph g = make_graph(n, n, 28);
  const mcvqa::Ansatz a = mcvqa::linear_entangler_ansatz(n, 1);
  mcvqa::ChainConfig cfg;
  cfg.beta = 0.2;
  cfg.xi = 0.9;
  cfg.eta = 0.1;
  cfg.epsilon = 1e-3;
  cfg.t_mc = 1;
  mcvqa::Rng rng(29);
  mcvqa::EndpointEvaluator evaluate =
      mcvqa::make_circuit_evaluator(g, a, cfg, rng);
  mcvqa::EndpointEvaluation current = evaluate(make_theta(n, 30));
  for (auto _ : state) {
    auto [next, record] = mcvqa::mh_step(current, evaluate, cfg, rng);
    benchmark::DoNotOptimize(record);
    current = std::move(next);
  }
}
BENCHMARK(BM_MhStep)->Arg(10);

void BM_BruteForceExtrema(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mcvqa::WeightedGraph g = make_graph(n, 2 * n, 31);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcvqa::brute_force_extrema(g));
  }
}
BENCHMARK(BM_BruteForceExtrema)->Arg(10)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
