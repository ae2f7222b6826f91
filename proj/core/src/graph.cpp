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

#include "mcvqa/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace mcvqa {

namespace {

constexpr int kBruteForceLimit = 24;

void check_assignment_length(const WeightedGraph& g, const VertexAssignment& x,
                             const char* who) {
  if (static_cast<int>(x.size()) != g.n_vertices) {
    throw std::invalid_argument(std::string(who) +
                                ": assignment length does not match vertex count");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace

void validate_graph(const WeightedGraph& g) {
  if (g.n_vertices <= 0) {
    throw std::invalid_argument("graph: n_vertices must be positive");
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges) {
    if (e.a < 0 || e.a >= g.n_vertices || e.b < 0 || e.b >= g.n_vertices) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (e.a == e.b) {
      throw std::invalid_argument("graph: self-loop edge");
    }
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("graph: duplicate edge");
    }
  }
}

WeightedGraph generate_random_graph(int n, int m, Rng& rng) {
  if (n <= 0 || m <= 0) {
    throw std::invalid_argument("generate_random_graph: n and m must be positive");
  }
  const std::int64_t n_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m > n_pairs) {
    throw std::invalid_argument(
        "generate_random_graph: m exceeds the number of unordered pairs");
  }

  // Partial Fisher-Yates over pair indices: the first m slots end up holding
  // a uniform sample without replacement.
  std::vector<std::int64_t> pairs(static_cast<std::size_t>(n_pairs));
  for (std::int64_t i = 0; i < n_pairs; ++i) {
    pairs[static_cast<std::size_t>(i)] = i;
  }
  for (int i = 0; i < m; ++i) {
    const std::uint64_t j =
        i + rng.uniform_int(static_cast<std::uint64_t>(n_pairs - i));
    std::swap(pairs[static_cast<std::size_t>(i)], pairs[j]);
  }

  WeightedGraph g;
  g.n_vertices = n;
  g.edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    // Decode pair index p into (a, b), a < b, lexicographic order.
    std::int64_t p = pairs[static_cast<std::size_t>(i)];
    int a = 0;
    std::int64_t row = n - 1;
    while (p >= row) {
      p -= row;
      --row;
      ++a;
    }
    const int b = a + 1 + static_cast<int>(p);
    g.edges.push_back({a, b, rng.normal()});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& l, const Edge& r) {
    return std::pair(l.a, l.b) < std::pair(r.a, r.b);
  });
  return g;
}

double maxcut_objective(const WeightedGraph& g, const VertexAssignment& x) {
  check_assignment_length(g, x, "maxcut_objective");
  double cut = 0.0;
  for (const Edge& e : g.edges) {
    cut += 0.5 * e.weight * (1.0 - x[e.a] * x[e.b]);
  }
  return cut;
}

double ising_energy(const WeightedGraph& g, const VertexAssignment& x) {
  check_assignment_length(g, x, "ising_energy");
  double energy = 0.0;
  for (const Edge& e : g.edges) {
    energy += e.weight * x[e.a] * x[e.b];
  }
  return energy;
}

double total_weight(const WeightedGraph& g) {
  double sum = 0.0;
  for (const Edge& e : g.edges) {
    sum += e.weight;
  }
  return sum;
}

GroundTruth brute_force_extrema(const WeightedGraph& g) {
  validate_graph(g);
  if (g.n_vertices > kBruteForceLimit) {
    throw std::length_error("brute_force_extrema: vertex count exceeds limit of 24");
  }
  const std::uint32_t count = 1u << g.n_vertices;
  const std::size_t n_edges = g.edges.size();

  std::vector<std::uint32_t> masks(n_edges);
  std::vector<double> weights(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    masks[i] = (1u << g.edges[i].a) | (1u << g.edges[i].b);
    weights[i] = g.edges[i].weight;
  }

  GroundTruth gt;
  std::uint32_t best = 0;
  for (std::uint32_t code = 0; code < count; ++code) {
    double energy = 0.0;
    for (std::size_t i = 0; i < n_edges; ++i) {
      // Even parity of the masked bits means aligned spins.
      energy += (__builtin_popcount(code & masks[i]) & 1) ? -weights[i] : weights[i];
    }
    if (code == 0) {
      gt.e_min = gt.e_max = energy;
    } else {
      if (energy < gt.e_min) {
        gt.e_min = energy;
        best = code;
      }
      if (energy > gt.e_max) {
        gt.e_max = energy;
      }
    }
  }

  gt.argmin.resize(static_cast<std::size_t>(g.n_vertices));
  for (int v = 0; v < g.n_vertices; ++v) {
    gt.argmin[static_cast<std::size_t>(v)] = (best >> v) & 1 ? 1 : -1;
  }
  return gt;
}

std::string graph_to_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["n"] = g.n_vertices;
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges) {
    j["edges"].push_back({e.a, e.b, e.weight});
  }
  return j.dump(2) + "\n";
}

WeightedGraph graph_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  WeightedGraph g;
  g.n_vertices = j.at("n").get<int>();
  for (const auto& item : j.at("edges")) {
    if (!item.is_array() || item.size() != 3) {
      throw std::invalid_argument("graph json: each edge must be [a, b, w]");
    }
    g.edges.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<double>()});
  }
  validate_graph(g);
  return g;
}

void save_graph(const WeightedGraph& g, const std::filesystem::path& path) {
  write_file(path, graph_to_json(g));
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(read_file(path));
}

std::string ground_truth_to_json(const GroundTruth& gt) {
  nlohmann::json j;
  j["e_min"] = gt.e_min;
  j["e_max"] = gt.e_max;
  j["argmin"] = gt.argmin;
  return j.dump(2) + "\n";
}

GroundTruth ground_truth_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GroundTruth gt;
  gt.e_min = j.at("e_min").get<double>();
  gt.e_max = j.at("e_max").get<double>();
  gt.argmin = j.at("argmin").get<VertexAssignment>();
  return gt;
}

}  // namespace mcvqa
