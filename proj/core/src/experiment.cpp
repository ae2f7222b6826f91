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

#include "mcvqa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "mcvqa/analysis.hpp"
#include "mcvqa/io_detail.hpp"
#include "mcvqa/vqe.hpp"

namespace mcvqa {
namespace {

using nlohmann::json;

std::string zero_pad(std::uint64_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) {
    s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  }
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

json shots_to_json(const ShotCount& m_shots) {
  if (m_shots.has_value()) {
    return *m_shots;
  }
  return "exact";
}

ShotCount shots_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "exact") {
      return kExact;
    }
    throw std::invalid_argument("m_shots must be \"exact\" or a positive integer");
  }
  if (!j.is_number_integer()) {
    throw std::invalid_argument("m_shots must be \"exact\" or a positive integer");
  }
  return j.get<std::int64_t>();
}

// Relative to `root` when the file lives under it, absolute otherwise, so a
// moved output directory stays self-contained.
std::string portable_path_string(const std::filesystem::path& file,
                                 const std::filesystem::path& root) {
  std::error_code ec;
  const std::filesystem::path rel = std::filesystem::relative(file, root, ec);
  if (!ec && !rel.empty() && *rel.begin() != "..") {
    return rel.generic_string();
  }
  return std::filesystem::absolute(file).generic_string();
}

void require_keys(const json& j, const char* what,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(std::string("unknown ") + what + " key '" +
                                  item.key() + "'");
    }
  }
}

}  // namespace

Ansatz build_ansatz(const AnsatzSpec& spec, int n_qubits) {
  if (spec.connectivity != "linear") {
    throw std::invalid_argument("unsupported ansatz connectivity '" +
                                spec.connectivity + "'");
  }
  return linear_entangler_ansatz(n_qubits, spec.n_layers);
}

std::string to_string(Method method) {
  switch (method) {
    case Method::kVqe:
      return "vqe";
    case Method::kMcmcVqa:
      return "mcmc-vqa";
  }
  throw std::invalid_argument("to_string: unknown method");
}

Method method_from_string(const std::string& s) {
  if (s == "vqe") return Method::kVqe;
  if (s == "mcmc-vqa") return Method::kMcmcVqa;
  throw std::invalid_argument("unknown method '" + s + "' (expected vqe or mcmc-vqa)");
}

void validate_experiment_config(const ExperimentConfig& cfg) {
  const bool has_files = !cfg.graph_files.empty();
  const bool has_gen = cfg.graph_gen.has_value();
  if (has_files == has_gen) {
    throw std::invalid_argument(
        "config: exactly one graph source required (files or generate)");
  }
  if (has_gen && cfg.graph_gen->count < 0) {
    throw std::invalid_argument("config: graph count must be non-negative");
  }
  if (cfg.ansatz.n_layers < 1) {
    throw std::invalid_argument("config: n_layers must be at least 1");
  }
  if (cfg.ansatz.connectivity != "linear") {
    throw std::invalid_argument("config: unsupported connectivity '" +
                                cfg.ansatz.connectivity + "'");
  }
  if (cfg.etas.empty()) {
    throw std::invalid_argument("config: at least one eta required");
  }
  if (cfg.n_seeds < 1) {
    throw std::invalid_argument("config: n_seeds must be at least 1");
  }
  // Reuse the chain validator for the numeric constraints shared with it.
  ChainConfig probe;
  probe.epsilon = cfg.epsilon;
  probe.m_shots = cfg.m_shots;
  probe.t_close = cfg.t_close;
  if (cfg.method == Method::kMcmcVqa) {
    if (cfg.betas.empty()) {
      throw std::invalid_argument("config: at least one beta required");
    }
    if (cfg.xis.empty()) {
      throw std::invalid_argument("config: at least one xi required");
    }
    probe.t_mc = cfg.t_mc;
    for (double beta : cfg.betas) {
      for (double xi : cfg.xis) {
        for (double eta : cfg.etas) {
          probe.beta = beta;
          probe.xi = xi;
          probe.eta = eta;
          validate_chain_config(probe);
        }
      }
    }
  } else {
    probe.beta = 1.0;
    probe.xi = 0.0;
    probe.t_mc = 0;
    for (double eta : cfg.etas) {
      probe.eta = eta;
      validate_chain_config(probe);
    }
  }
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["method"] = to_string(cfg.method);
  if (!cfg.graph_files.empty()) {
    json files = json::array();
    for (const auto& p : cfg.graph_files) {
      files.push_back(p.generic_string());
    }
    j["graphs"] = json{{"files", files}};
  } else if (cfg.graph_gen.has_value()) {
    j["graphs"] = json{{"generate",
                        json{{"n_vertices", cfg.graph_gen->n_vertices},
                             {"n_edges", cfg.graph_gen->n_edges},
                             {"count", cfg.graph_gen->count}}}};
  } else {
    j["graphs"] = json::object();
  }
  j["ansatz"] = json{{"n_layers", cfg.ansatz.n_layers},
                     {"connectivity", cfg.ansatz.connectivity}};
  j["betas"] = cfg.betas;
  j["xis"] = cfg.xis;
  j["etas"] = cfg.etas;
  j["epsilon"] = cfg.epsilon;
  j["m_shots"] = shots_to_json(cfg.m_shots);
  j["t_mc"] = cfg.t_mc;
  j["t_close"] = cfg.t_close;
  j["n_seeds"] = cfg.n_seeds;
  j["master_seed"] = cfg.master_seed;
  j["outdir"] = cfg.outdir.generic_string();
  return j.dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(const std::string& text,
                                             const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  require_keys(j, "config",
               {"method", "graphs", "ansatz", "betas", "xis", "etas", "epsilon",
                "m_shots", "t_mc", "t_close", "n_seeds", "master_seed", "outdir"});

  ExperimentConfig cfg;
  cfg.graph_files.clear();
  cfg.graph_gen.reset();
  if (j.contains("method")) {
    cfg.method = method_from_string(j.at("method").get<std::string>());
  }
  if (!j.contains("graphs")) {
    throw std::invalid_argument("config: missing 'graphs'");
  }
  const json& graphs = j.at("graphs");
  require_keys(graphs, "graphs", {"files", "generate"});
  if (graphs.contains("files") == graphs.contains("generate")) {
    throw std::invalid_argument(
        "config: graphs needs exactly one of 'files' or 'generate'");
  }
  if (graphs.contains("files")) {
    for (const auto& entry : graphs.at("files")) {
      std::filesystem::path p = entry.get<std::string>();
      if (p.is_relative()) {
        p = base_dir / p;
      }
      if (!std::filesystem::exists(p)) {
        throw std::invalid_argument("config references missing graph file " +
                                    p.string());
      }
      cfg.graph_files.push_back(p.lexically_normal());
    }
    if (cfg.graph_files.empty()) {
      throw std::invalid_argument("config: graph file list is empty");
    }
  } else {
    const json& gen = graphs.at("generate");
    require_keys(gen, "generate", {"n_vertices", "n_edges", "count"});
    GraphGenSpec spec;
    spec.n_vertices = gen.value("n_vertices", spec.n_vertices);
    spec.n_edges = gen.value("n_edges", spec.n_edges);
    spec.count = gen.value("count", spec.count);
    cfg.graph_gen = spec;
  }
  if (j.contains("ansatz")) {
    const json& ansatz = j.at("ansatz");
    require_keys(ansatz, "ansatz", {"n_layers", "connectivity"});
    cfg.ansatz.n_layers = ansatz.value("n_layers", cfg.ansatz.n_layers);
    cfg.ansatz.connectivity = ansatz.value("connectivity", cfg.ansatz.connectivity);
  }
  if (j.contains("betas")) cfg.betas = j.at("betas").get<std::vector<double>>();
  if (j.contains("xis")) cfg.xis = j.at("xis").get<std::vector<double>>();
  if (j.contains("etas")) cfg.etas = j.at("etas").get<std::vector<double>>();
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (j.contains("m_shots")) cfg.m_shots = shots_from_json(j.at("m_shots"));
  if (j.contains("t_mc")) cfg.t_mc = j.at("t_mc").get<int>();
  if (j.contains("t_close")) cfg.t_close = j.at("t_close").get<int>();
  if (j.contains("n_seeds")) cfg.n_seeds = j.at("n_seeds").get<int>();
  if (j.contains("master_seed")) {
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  }
  if (j.contains("outdir")) {
    std::filesystem::path p = j.at("outdir").get<std::string>();
    if (p.is_relative()) {
      p = base_dir / p;
    }
    cfg.outdir = p.lexically_normal();
  }
  validate_experiment_config(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(read_text_file(path), path.parent_path());
}

std::uint64_t graph_seed(std::uint64_t master_seed, int graph_index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(graph_index));
}

std::uint64_t theta0_seed(std::uint64_t master_seed, int graph_index,
                          int seed_index) {
  const std::uint64_t slot =
      static_cast<std::uint64_t>(graph_index) * kSeedStride +
      static_cast<std::uint64_t>(seed_index);
  return derive_seed(master_seed, kThetaSeedSpace | slot);
}

std::uint64_t chain_seed(std::uint64_t master_seed, std::uint64_t cell_index) {
  return derive_seed(master_seed, kChainSeedSpace | cell_index);
}

ParameterVector draw_theta0(std::uint64_t seed, int parameter_count) {
  if (parameter_count < 0) {
    throw std::invalid_argument("draw_theta0: negative parameter count");
  }
  Rng rng(seed);
  ParameterVector theta(static_cast<std::size_t>(parameter_count));
  for (double& angle : theta) {
    angle = rng.uniform() * 2.0 * std::numbers::pi;
  }
  return theta;
}

std::vector<CellSpec> enumerate_cells(const ExperimentConfig& cfg, int n_graphs) {
  validate_experiment_config(cfg);
  if (n_graphs < 1) {
    throw std::invalid_argument("enumerate_cells: need at least one graph");
  }
  if (static_cast<std::uint64_t>(n_graphs) > kSeedStride ||
      static_cast<std::uint64_t>(cfg.n_seeds) > kSeedStride) {
    throw std::invalid_argument("enumerate_cells: graph or seed count too large");
  }
  std::vector<CellSpec> cells;
  const auto add_grid_point = [&](double beta, double xi, double eta) {
    for (int gi = 0; gi < n_graphs; ++gi) {
      for (int si = 0; si < cfg.n_seeds; ++si) {
        CellSpec cell;
        cell.index = cells.size();
        cell.method = cfg.method;
        cell.graph_index = gi;
        cell.seed_index = si;
        cell.beta = beta;
        cell.xi = xi;
        cell.eta = eta;
        cell.theta0_seed = theta0_seed(cfg.master_seed, gi, si);
        cell.chain_seed = chain_seed(cfg.master_seed, cell.index);
        cells.push_back(std::move(cell));
      }
    }
  };
  if (cfg.method == Method::kVqe) {
    for (double eta : cfg.etas) {
      add_grid_point(0.0, 0.0, eta);
    }
  } else {
    for (double beta : cfg.betas) {
      for (double xi : cfg.xis) {
        for (double eta : cfg.etas) {
          add_grid_point(beta, xi, eta);
        }
      }
    }
  }
  return cells;
}

CellOutcome run_cell(const ExperimentConfig& cfg, const CellSpec& cell,
                     const WeightedGraph& g) {
  const Ansatz ansatz = build_ansatz(cfg.ansatz, g.n_vertices);
  ParameterVector theta0 = draw_theta0(cell.theta0_seed, ansatz.parameter_count());
  Rng rng(cell.chain_seed);

  ChainConfig chain;
  chain.eta = cell.eta;
  chain.epsilon = cfg.epsilon;
  chain.m_shots = cfg.m_shots;
  chain.t_close = cfg.t_close;
  if (cell.method == Method::kMcmcVqa) {
    chain.beta = cell.beta;
    chain.xi = cell.xi;
    chain.t_mc = cfg.t_mc;
  } else {
    chain.beta = 1.0;  // inert: no Markov epochs
    chain.xi = 0.0;
    chain.t_mc = 0;
  }

  ChainResult result = run_mcmc_vqa(g, ansatz, std::move(theta0), chain, rng);

  CellOutcome outcome;
  outcome.final_loss =
      loss_statistics(g, prepare_state(ansatz, result.theta), cfg.m_shots, rng).loss;
  int markov_rows = 0;
  int accepted = 0;
  for (const auto& row : result.trace.rows) {
    if (row.phase == ChainPhase::kMarkov) {
      ++markov_rows;
      accepted += row.accepted ? 1 : 0;
    }
  }
  outcome.accepted_fraction =
      markov_rows > 0 ? static_cast<double>(accepted) / markov_rows : 0.0;
  outcome.trace = std::move(result.trace);
  return outcome;
}

std::vector<NamedGraph> resolve_graphs(const ExperimentConfig& cfg,
                                       bool materialize) {
  std::vector<NamedGraph> graphs;
  if (!cfg.graph_files.empty()) {
    for (std::size_t i = 0; i < cfg.graph_files.size(); ++i) {
      NamedGraph ng;
      ng.file = cfg.graph_files[i];
      ng.id = ng.file.stem().string();
      ng.graph = load_graph(ng.file);
      // Stems can collide across directories; disambiguate by position.
      for (const auto& prior : graphs) {
        if (prior.id == ng.id) {
          ng.id += "_" + std::to_string(i);
          break;
        }
      }
      graphs.push_back(std::move(ng));
    }
    return graphs;
  }
  const GraphGenSpec& gen = cfg.graph_gen.value();
  std::filesystem::path dir;
  if (materialize) {
    dir = cfg.outdir / "graphs";
    std::filesystem::create_directories(dir);
  }
  for (int i = 0; i < gen.count; ++i) {
    Rng rng(graph_seed(cfg.master_seed, i));
    NamedGraph ng;
    ng.id = "g" + zero_pad(static_cast<std::uint64_t>(i), 3);
    ng.graph = generate_random_graph(gen.n_vertices, gen.n_edges, rng);
    if (materialize) {
      ng.file = dir / (ng.id + ".json");
      save_graph(ng.graph, ng.file);
    }
    graphs.push_back(std::move(ng));
  }
  return graphs;
}

int cmd_gen_graphs(int n, int m, int count, std::uint64_t seed,
                   const std::filesystem::path& outdir) {
  try {
    if (count < 0) {
      throw std::invalid_argument("count must be non-negative");
    }
    std::filesystem::create_directories(outdir);
    for (int i = 0; i < count; ++i) {
      Rng rng(graph_seed(seed, i));
      const WeightedGraph g = generate_random_graph(n, m, rng);
      const auto path = outdir / ("g" + zero_pad(static_cast<std::uint64_t>(i), 3) +
                                  ".json");
      save_graph(g, path);
      std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_brute_force(const std::vector<std::filesystem::path>& graph_paths,
                    const std::optional<std::filesystem::path>& outdir) {
  try {
    if (graph_paths.empty()) {
      throw std::invalid_argument("no graph files given");
    }
    if (outdir.has_value()) {
      std::filesystem::create_directories(*outdir);
    }
    for (const auto& path : graph_paths) {
      const WeightedGraph g = load_graph(path);
      const GroundTruth gt = brute_force_extrema(g);
      const std::string name = path.stem().string() + ".gt.json";
      const std::filesystem::path out_path =
          outdir.has_value() ? *outdir / name : path.parent_path() / name;
      write_text_file(out_path, ground_truth_to_json(gt));
      std::cout << path.string() << ": e_min=" << detail::format_double(gt.e_min)
                << " e_max=" << detail::format_double(gt.e_max) << " -> "
                << out_path.string() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

struct CellRunRecord {
  bool ok = true;
  std::string error;
  double lambda_min = 0.0;
  double final_loss = 0.0;
  double accepted_fraction = 0.0;
};

void write_cell_outputs(const ExperimentConfig& cfg, const CellSpec& cell,
                        const NamedGraph& graph, const CellOutcome& outcome,
                        const std::filesystem::path& trace_path,
                        const std::filesystem::path& summary_path) {
  if (cell.method == Method::kVqe) {
    VqeTrace vqe_trace;
    vqe_trace.rows.reserve(outcome.trace.rows.size());
    for (const auto& row : outcome.trace.rows) {
      vqe_trace.rows.push_back({row.epoch, row.loss, {}});
    }
    write_vqe_trace_csv(vqe_trace, trace_path);
  } else {
    write_chain_trace_csv(outcome.trace, trace_path);
  }

  json summary;
  summary["cell_index"] = cell.index;
  summary["method"] = to_string(cell.method);
  summary["graph_id"] = cell.graph_id;
  summary["graph_file"] = portable_path_string(graph.file, cfg.outdir);
  summary["seed_index"] = cell.seed_index;
  summary["beta"] = cell.beta;
  summary["xi"] = cell.xi;
  summary["eta"] = cell.eta;
  summary["epsilon"] = cfg.epsilon;
  summary["m_shots"] = shots_to_json(cfg.m_shots);
  summary["t_mc"] = cell.method == Method::kMcmcVqa ? cfg.t_mc : 0;
  summary["t_close"] = cfg.t_close;
  summary["theta0_seed"] = cell.theta0_seed;
  summary["seed"] = cell.chain_seed;
  summary["lambda_min"] = outcome.trace.lambda_min;
  summary["final_loss"] = outcome.final_loss;
  summary["accepted_fraction"] = outcome.accepted_fraction;
  write_text_file(summary_path, summary.dump(2) + "\n");
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg, int workers) {
  try {
    validate_experiment_config(cfg);
    if (workers < 1) {
      throw std::invalid_argument("workers must be at least 1");
    }
    const std::filesystem::path cells_dir = cfg.outdir / "cells";
    std::filesystem::create_directories(cells_dir);

    const std::vector<NamedGraph> graphs = resolve_graphs(cfg, true);
    if (graphs.empty()) {
      throw std::invalid_argument("config yields no graphs");
    }
    std::vector<CellSpec> cells =
        enumerate_cells(cfg, static_cast<int>(graphs.size()));
    for (auto& cell : cells) {
      cell.graph_id = graphs[static_cast<std::size_t>(cell.graph_index)].id;
    }

    std::vector<CellRunRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) {
          return;
        }
        const CellSpec& cell = cells[i];
        const NamedGraph& graph = graphs[static_cast<std::size_t>(cell.graph_index)];
        CellRunRecord& record = records[i];
        try {
          const CellOutcome outcome = run_cell(cfg, cell, graph.graph);
          const std::string stem = "cell_" + zero_pad(cell.index, 5);
          write_cell_outputs(cfg, cell, graph, outcome,
                             cells_dir / (stem + "_trace.csv"),
                             cells_dir / (stem + "_summary.json"));
          record.lambda_min = outcome.trace.lambda_min;
          record.final_loss = outcome.final_loss;
          record.accepted_fraction = outcome.accepted_fraction;
        } catch (const std::exception& e) {
          record.ok = false;
          record.error = e.what();
        }
      }
    };

    const int n_workers =
        std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
    if (n_workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(n_workers));
      for (int t = 0; t < n_workers; ++t) {
        pool.emplace_back(worker);
      }
      for (auto& thread : pool) {
        thread.join();
      }
    }

    json manifest;
    manifest["generated_at"] = utc_timestamp();
    manifest["config"] = json::parse(experiment_config_to_json(cfg));
    json graph_list = json::array();
    for (const auto& graph : graphs) {
      graph_list.push_back(json{{"id", graph.id},
                                {"file", portable_path_string(graph.file, cfg.outdir)},
                                {"n_vertices", graph.graph.n_vertices},
                                {"n_edges", static_cast<int>(graph.graph.edges.size())}});
    }
    manifest["graphs"] = graph_list;

    int n_failed = 0;
    json cell_list = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const CellSpec& cell = cells[i];
      const CellRunRecord& record = records[i];
      json entry;
      entry["index"] = cell.index;
      entry["method"] = to_string(cell.method);
      entry["graph_id"] = cell.graph_id;
      entry["seed_index"] = cell.seed_index;
      entry["beta"] = cell.beta;
      entry["xi"] = cell.xi;
      entry["eta"] = cell.eta;
      entry["theta0_seed"] = cell.theta0_seed;
      entry["chain_seed"] = cell.chain_seed;
      if (record.ok) {
        const std::string stem = "cell_" + zero_pad(cell.index, 5);
        entry["status"] = "ok";
        entry["trace_file"] = "cells/" + stem + "_trace.csv";
        entry["summary_file"] = "cells/" + stem + "_summary.json";
        entry["lambda_min"] = record.lambda_min;
        entry["final_loss"] = record.final_loss;
        entry["accepted_fraction"] = record.accepted_fraction;
      } else {
        entry["status"] = "failed";
        entry["error"] = record.error;
        ++n_failed;
      }
      cell_list.push_back(std::move(entry));
    }
    manifest["cells"] = cell_list;
    manifest["n_cells"] = cells.size();
    manifest["n_failed"] = n_failed;

    const auto manifest_path = cfg.outdir / "manifest.json";
    write_text_file(manifest_path, manifest.dump(2) + "\n");
    std::cout << "ran " << cells.size() << " cells, " << n_failed
              << " failed; manifest at " << manifest_path.string() << "\n";
    return n_failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

struct AnalyzeGroup {
  // eta -> records at that learning rate
  std::map<double, std::vector<AccuracyRecord>> by_eta;
};

struct FitInput {
  double beta = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  std::vector<std::vector<double>> run_losses;  // markov-phase, epoch order
  std::vector<GroundTruth> run_gts;
};

}  // namespace

int cmd_analyze(const std::filesystem::path& manifest_path,
                const std::filesystem::path& outdir) {
  try {
    json manifest;
    try {
      manifest = json::parse(read_text_file(manifest_path));
    } catch (const json::parse_error& e) {
      throw std::runtime_error("manifest is not valid JSON: " + std::string(e.what()));
    }
    const std::filesystem::path base = manifest_path.parent_path();
    if (!manifest.contains("cells") || !manifest.at("cells").is_array() ||
        manifest.at("cells").empty()) {
      throw std::invalid_argument("manifest lists no cells");
    }
    const std::string method =
        manifest.at("config").at("method").get<std::string>();

    std::map<std::string, GroundTruth> truths;
    for (const auto& entry : manifest.at("graphs")) {
      std::filesystem::path file = entry.at("file").get<std::string>();
      if (file.is_relative()) {
        file = base / file;
      }
      truths[entry.at("id").get<std::string>()] =
          brute_force_extrema(load_graph(file));
    }

    std::map<std::pair<double, double>, AnalyzeGroup> groups;
    for (const auto& cell : manifest.at("cells")) {
      if (cell.value("status", "ok") != "ok") {
        continue;  // failed cells carry no outputs
      }
      const std::string cell_name = "cell " + cell.at("index").dump();
      std::filesystem::path summary_file = cell.at("summary_file").get<std::string>();
      if (summary_file.is_relative()) {
        summary_file = base / summary_file;
      }
      json summary;
      try {
        summary = json::parse(read_text_file(summary_file));
      } catch (const std::exception& e) {
        throw std::runtime_error(cell_name + ": " + e.what());
      }
      const std::string graph_id = cell.at("graph_id").get<std::string>();
      const auto truth = truths.find(graph_id);
      if (truth == truths.end()) {
        throw std::runtime_error(cell_name + ": graph '" + graph_id +
                                 "' missing from manifest graph list");
      }
      const double beta = cell.at("beta").get<double>();
      const double xi = cell.at("xi").get<double>();
      const double eta = cell.at("eta").get<double>();
      groups[{beta, xi}].by_eta[eta].push_back(make_accuracy_record(
          graph_id, cell.at("seed_index").get<int>(), beta, xi, eta,
          summary.at("final_loss").get<double>(), truth->second));
    }
    if (groups.empty()) {
      throw std::invalid_argument("manifest has no successful cells");
    }

    // Per (beta, xi) group: scan the learning-rate grid, keep the eta with the
    // best mean accuracy, and report the ensemble statistics at that eta.
    struct AggregateRow {
      double beta, xi, eta;
      GroupStats stats;
    };
    std::vector<AggregateRow> rows;
    std::vector<FitInput> fit_inputs;
    for (const auto& [key, group] : groups) {
      double best_eta = 0.0;
      double best_mean = -1.0;
      GroupStats best_stats;
      for (const auto& [eta, records] : group.by_eta) {
        const auto stats =
            aggregate_accuracy(records, [](const AccuracyRecord&) { return 0; });
        const GroupStats& s = stats.at(0);
        if (s.mean_accuracy > best_mean) {
          best_mean = s.mean_accuracy;
          best_eta = eta;
          best_stats = s;
        }
      }
      rows.push_back({key.first, key.second, best_eta, best_stats});
      if (method == "mcmc-vqa") {
        FitInput input;
        input.beta = key.first;
        input.xi = key.second;
        input.eta = best_eta;
        fit_inputs.push_back(std::move(input));
      }
    }

    // Collect markov-phase loss sequences for the fit operating points.
    for (auto& input : fit_inputs) {
      for (const auto& cell : manifest.at("cells")) {
        if (cell.value("status", "ok") != "ok") {
          continue;
        }
        if (cell.at("beta").get<double>() != input.beta ||
            cell.at("xi").get<double>() != input.xi ||
            cell.at("eta").get<double>() != input.eta) {
          continue;
        }
        const std::string cell_name = "cell " + cell.at("index").dump();
        std::filesystem::path trace_file = cell.at("trace_file").get<std::string>();
        if (trace_file.is_relative()) {
          trace_file = base / trace_file;
        }
        ChainTrace trace;
        try {
          trace = read_chain_trace_csv(trace_file);
        } catch (const std::exception& e) {
          throw std::runtime_error(cell_name + ": " + e.what());
        }
        std::vector<double> losses;
        for (const auto& row : trace.rows) {
          if (row.phase == ChainPhase::kMarkov) {
            losses.push_back(row.loss);
          }
        }
        if (losses.empty()) {
          throw std::runtime_error(cell_name + ": trace has no markov rows");
        }
        input.run_losses.push_back(std::move(losses));
        input.run_gts.push_back(truths.at(cell.at("graph_id").get<std::string>()));
      }
    }

    json fits = json::array();
    for (const auto& input : fit_inputs) {
      const std::vector<double> curve =
          ensemble_error_curve(input.run_losses, input.run_gts);
      std::vector<std::pair<double, double>> points;
      for (std::size_t t = 0; t < curve.size(); t += 10) {
        if (curve[t] > 0.0) {
          points.emplace_back(static_cast<double>(t), curve[t]);
        }
      }
      double proxy = 0.0;
      for (const auto& [id, gt] : truths) {
        proxy += pi_star_proxy(gt, input.beta);
      }
      proxy /= static_cast<double>(truths.size());
      json entry;
      entry["beta"] = input.beta;
      entry["xi"] = input.xi;
      entry["eta"] = input.eta;
      entry["n_runs"] = input.run_losses.size();
      entry["n_points"] = points.size();
      entry["mean_pi_star_proxy"] = proxy;
      if (points.size() >= 3) {
        const MixingFit fit = fit_mixing_curve(points);
        entry["amplitude"] = fit.amplitude;
        entry["rate"] = fit.rate;
        entry["residual"] = fit.residual;
      } else {
        entry["error"] = "fewer than three positive ensemble-error points";
      }
      fits.push_back(std::move(entry));
    }

    std::filesystem::create_directories(outdir);
    const auto aggregate_path = outdir / "aggregate.csv";
    {
      std::ostringstream csv;
      csv << "method,beta,xi,eta,mean_accuracy,std_accuracy,n\n";
      for (const auto& row : rows) {
        csv << method << ',' << detail::format_double(row.beta) << ','
            << detail::format_double(row.xi) << ','
            << detail::format_double(row.eta) << ','
            << detail::format_double(row.stats.mean_accuracy) << ','
            << detail::format_double(row.stats.std_accuracy) << ','
            << row.stats.count << '\n';
      }
      write_text_file(aggregate_path, csv.str());
    }
    const auto fits_path = outdir / "fits.json";
    write_text_file(fits_path, fits.dump(2) + "\n");
    std::cout << "wrote " << aggregate_path.string() << "\n";
    std::cout << "wrote " << fits_path.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mcvqa
