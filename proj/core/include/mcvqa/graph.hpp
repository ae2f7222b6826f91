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

#ifndef MCVQA_GRAPH_HPP_
#define MCVQA_GRAPH_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "mcvqa/rng.hpp"

namespace mcvqa {

struct Edge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

/// Undirected weighted graph. The edge list doubles as the term list of the
/// Ising Hamiltonian sum_i w_i Z_a Z_b, so weighted MaxCut on the graph and
/// the Ising ground-state search are two views of the same object.
struct WeightedGraph {
  int n_vertices = 0;
  std::vector<Edge> edges;
};

/// One spin per vertex, each exactly -1 or +1.
using VertexAssignment = std::vector<int>;

/// Exact Ising-energy extrema over all 2^n assignments.
struct GroundTruth {
  double e_min = 0.0;
  double e_max = 0.0;
  VertexAssignment argmin;
};

/// Throws std::invalid_argument on out-of-range endpoints, self-loops, or a
/// repeated unordered vertex pair.
void validate_graph(const WeightedGraph& g);

/// m distinct edges drawn uniformly without replacement from all unordered
/// pairs, each weight a standard normal deviate. Edges come out sorted by
/// (a, b). Deterministic given the rng state.
WeightedGraph generate_random_graph(int n, int m, Rng& rng);

/// Cut value (1/2) sum_i w_i (1 - x_a x_b).
double maxcut_objective(const WeightedGraph& g, const VertexAssignment& x);

/// Ising energy sum_i w_i x_a x_b. Related to the cut by
/// maxcut_objective = (total_weight - ising_energy) / 2.
double ising_energy(const WeightedGraph& g, const VertexAssignment& x);

double total_weight(const WeightedGraph& g);

/// Enumerates all 2^n assignments; n_vertices <= 24. Ties on the minimum
/// break toward the lowest binary encoding (bit k set means spin +1 on
/// vertex k, assignments visited in ascending encoded order).
GroundTruth brute_force_extrema(const WeightedGraph& g);

// JSON form: {"n": int, "edges": [[a, b, w], ...]}.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);
void save_graph(const WeightedGraph& g, const std::filesystem::path& path);
WeightedGraph load_graph(const std::filesystem::path& path);

// JSON form: {"e_min": w, "e_max": w, "argmin": [s, ...]}.
std::string ground_truth_to_json(const GroundTruth& gt);
GroundTruth ground_truth_from_json(const std::string& text);

}  // namespace mcvqa

#endif  // MCVQA_GRAPH_HPP_
