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

#ifndef MCVQA_EXPERIMENT_HPP_
#define MCVQA_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mcvqa/graph.hpp"
#include "mcvqa/mcmc.hpp"
#include "mcvqa/qsim.hpp"

namespace mcvqa {

struct AnsatzSpec {
  int n_layers = 1;
  std::string connectivity = "linear";  // the only implemented layout
};

Ansatz build_ansatz(const AnsatzSpec& spec, int n_qubits);

struct GraphGenSpec {
  int n_vertices = 10;
  int n_edges = 10;
  int count = 10;
};

enum class Method { kVqe, kMcmcVqa };

std::string to_string(Method method);
Method method_from_string(const std::string& s);

// One sweep: every (beta, xi, eta) x graph x seed cell of one method.
// Plain-VQE sweeps ignore betas/xis/t_mc and run t_close descent epochs.
struct ExperimentConfig {
  Method method = Method::kMcmcVqa;
  std::vector<std::filesystem::path> graph_files;  // explicit instance set...
  std::optional<GraphGenSpec> graph_gen;           // ...or generated on demand
  AnsatzSpec ansatz;
  std::vector<double> betas{0.2};
  std::vector<double> xis{0.9};
  std::vector<double> etas{0.01, 0.05, 0.1, 0.5, 1.0};
  double epsilon = 1e-2;
  ShotCount m_shots = kExact;
  int t_mc = 400;
  int t_close = 100;
  int n_seeds = 20;
  std::uint64_t master_seed = 1;
  std::filesystem::path outdir = "out";
};

// Structural checks only (grids non-empty, ChainConfig constraints satisfied,
// exactly one graph source present).  Throws std::invalid_argument.
void validate_experiment_config(const ExperimentConfig& cfg);

// JSON round trip.  Relative graph file paths are interpreted relative to
// base_dir (the config file's directory for load_experiment_config) and must
// exist at load time.
std::string experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const std::string& text,
                                             const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Seed derivation namespaces.  Graph seeds use the raw index; initial-angle
// seeds depend only on (graph, seed index) so every method and hyperparameter
// cell starts the same (graph, seed) pair from the same angles; chain seeds
// are unique per cell.  Disjoint index ranges keep the derived seeds
// collision-free across all three uses.
inline constexpr std::uint64_t kThetaSeedSpace = 0x4000000000000000ull;
inline constexpr std::uint64_t kChainSeedSpace = 0x8000000000000000ull;
inline constexpr std::uint64_t kSeedStride = 0x10000ull;

std::uint64_t graph_seed(std::uint64_t master_seed, int graph_index);
std::uint64_t theta0_seed(std::uint64_t master_seed, int graph_index,
                          int seed_index);
std::uint64_t chain_seed(std::uint64_t master_seed, std::uint64_t cell_index);

// Initial angles, each uniform on [0, 2*pi).
ParameterVector draw_theta0(std::uint64_t seed, int parameter_count);

struct CellSpec {
  std::uint64_t index = 0;
  Method method = Method::kMcmcVqa;
  int graph_index = 0;
  std::string graph_id;
  int seed_index = 0;
  double beta = 0.0;  // zero for plain VQE
  double xi = 0.0;    // zero for plain VQE
  double eta = 0.0;
  std::uint64_t theta0_seed = 0;
  std::uint64_t chain_seed = 0;
};

// Cell order: beta-major, then xi, eta, graph, seed.  Plain VQE enumerates a
// single pseudo (beta, xi) = (0, 0) slot.
std::vector<CellSpec> enumerate_cells(const ExperimentConfig& cfg, int n_graphs);

struct CellOutcome {
  ChainTrace trace;          // markov and/or closing rows
  double final_loss = 0.0;   // fresh exact-convention evaluation at the end point
  double accepted_fraction = 0.0;  // over markov rows; zero if none
};

// Runs one cell end to end.  Plain VQE runs as a chain with t_mc = 0, so its
// trace carries closing-phase rows only.
CellOutcome run_cell(const ExperimentConfig& cfg, const CellSpec& cell,
                     const WeightedGraph& g);

// Loads graph_files or generates graph_gen instances (ids g000, g001, ...;
// generated ones are written under outdir/graphs when outdir is non-empty).
struct NamedGraph {
  std::string id;
  std::filesystem::path file;  // empty when not materialized on disk
  WeightedGraph graph;
};
std::vector<NamedGraph> resolve_graphs(const ExperimentConfig& cfg,
                                       bool materialize);

// Subcommand entry points.  Each returns a process exit code and reports
// failures on stderr rather than throwing across main.
int cmd_gen_graphs(int n, int m, int count, std::uint64_t seed,
                   const std::filesystem::path& outdir);
int cmd_brute_force(const std::vector<std::filesystem::path>& graph_paths,
                    const std::optional<std::filesystem::path>& outdir);
int cmd_run(const ExperimentConfig& cfg, int workers);
int cmd_analyze(const std::filesystem::path& manifest_path,
                const std::filesystem::path& outdir);

}  // namespace mcvqa

#endif  // MCVQA_EXPERIMENT_HPP_
