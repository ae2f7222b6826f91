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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mcvqa/experiment.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"MCMC-VQA experiment harness for weighted MaxCut"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand(
      "gen-graphs", "Generate random weighted graph instances as JSON files");
  int gen_vertices = 10;
  int gen_edges = 10;
  int gen_count = 10;
  std::uint64_t gen_seed = 1;
  std::string gen_outdir = "graphs";
  gen->add_option("-n,--vertices", gen_vertices, "Vertices per graph")
      ->capture_default_str();
  gen->add_option("-m,--edges", gen_edges, "Edges per graph")
      ->capture_default_str();
  gen->add_option("--count", gen_count, "Number of graphs")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Master seed")->capture_default_str();
  gen->add_option("--outdir", gen_outdir, "Output directory")
      ->capture_default_str();

  auto* brute = app.add_subcommand(
      "brute-force", "Exact Ising energy extrema for graph JSON files");
  std::vector<std::string> brute_graphs;
  std::string brute_outdir;
  brute->add_option("graphs", brute_graphs, "Graph JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  brute->add_option("--outdir", brute_outdir,
                    "Write .gt.json files here instead of next to the inputs");

  auto* run = app.add_subcommand(
      "run", "Execute every (graph x seed x hyperparameter) cell of a sweep");
  std::string run_config;
  std::uint64_t run_seed = 0;
  std::string run_outdir;
  int run_workers =
      static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::int64_t run_shots = 0;
  bool run_exact = false;
  run->add_option("--config", run_config, "Experiment config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  auto* seed_opt = run->add_option("--seed", run_seed, "Override master_seed");
  auto* outdir_opt =
      run->add_option("--outdir", run_outdir, "Override output directory");
  run->add_option("--workers", run_workers, "Concurrent cells")
      ->capture_default_str();
  auto* shots_opt = run->add_option(
      "--shots", run_shots, "Override to finite measurement mode with M shots");
  auto* exact_opt =
      run->add_flag("--exact", run_exact, "Override to exact expectation mode");
  shots_opt->excludes(exact_opt);
  exact_opt->excludes(shots_opt);

  auto* analyze = app.add_subcommand(
      "analyze", "Aggregate run outputs into accuracy tables and mixing fits");
  std::string analyze_manifest;
  std::string analyze_outdir;
  analyze->add_option("manifest", analyze_manifest, "manifest.json from a run")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--outdir", analyze_outdir,
                      "Output directory (default: the manifest's directory)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    return mcvqa::cmd_gen_graphs(gen_vertices, gen_edges, gen_count, gen_seed,
                                 gen_outdir);
  }
  if (brute->parsed()) {
    std::vector<fs::path> paths(brute_graphs.begin(), brute_graphs.end());
    std::optional<fs::path> outdir;
    if (!brute_outdir.empty()) {
      outdir = brute_outdir;
    }
    return mcvqa::cmd_brute_force(paths, outdir);
  }
  if (run->parsed()) {
    try {
      mcvqa::ExperimentConfig cfg = mcvqa::load_experiment_config(run_config);
      if (seed_opt->count() > 0) {
        cfg.master_seed = run_seed;
      }
      if (outdir_opt->count() > 0) {
        cfg.outdir = run_outdir;
      }
      if (run_exact) {
        cfg.m_shots = mcvqa::kExact;
      }
      if (shots_opt->count() > 0) {
        cfg.m_shots = run_shots;
      }
      return mcvqa::cmd_run(cfg, run_workers);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  if (analyze->parsed()) {
    const fs::path manifest = analyze_manifest;
    const fs::path outdir =
        analyze_outdir.empty() ? manifest.parent_path() : fs::path(analyze_outdir);
    return mcvqa::cmd_analyze(manifest, outdir);
  }
  return 1;
}
