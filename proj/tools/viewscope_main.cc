// Copyright 2026 The Viewscope Authors.
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

// viewscope: view set selection for synthetic indoor scenes.
//
//   viewscope [--config run.ini] [--seed N] [--workers N] [--force]
//             [--out DIR] <verb>
//
// Verbs: suite, scene validate <file>, pdf, generate, select,
// baseline <rand|hum|cat|traj|heur>, eval, export, pipeline.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "viewscope/baselines.h"
#include "viewscope/pipeline.h"
#include "viewscope/run_config.h"
#include "viewscope/scene.h"

int main(int argc, char** argv) {
  using namespace viewscope;

  CLI::App app{"viewscope: data-driven view set selection for indoor scenes"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir;
  bool force = false;
  app.add_option("--config", config_path, "Run configuration (INI)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Global seed (overrides [run] seed)");
  app.add_option("--workers", workers, "Concurrent rooms (overrides [run] workers)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory (overrides [run] output_dir)");
  app.add_flag("--force", force, "Overwrite existing outputs");

  auto* suite = app.add_subcommand("suite", "Generate the scene suite and its example set");
  auto* scene = app.add_subcommand("scene", "Scene file utilities");
  scene->require_subcommand(1);
  std::string scene_file;
  auto* validate = scene->add_subcommand("validate", "Check a scene file and list violations");
  validate->add_option("file", scene_file, "Scene JSON")->required();
  auto* pdf = app.add_subcommand("pdf", "Estimate category pdfs and weights from the example set");
  auto* generate = app.add_subcommand("generate", "Generate and score candidate views per room");
  auto* select = app.add_subcommand("select", "Select the view set from the candidates");
  auto* baseline = app.add_subcommand("baseline", "Generate baseline views");
  std::string baseline_kind;
  baseline->add_option("kind", baseline_kind, "rand, hum, cat, traj or heur")
      ->required()
      ->check(CLI::IsMember({"rand", "hum", "cat", "traj", "heur"}));
  auto* eval = app.add_subcommand("eval", "EMD of the selection and baselines against the examples");
  auto* exp = app.add_subcommand("export", "Render the selection to PGM pairs");
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage in order");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    try {
      const auto violations = ValidateSceneFile(scene_file);
      for (const std::string& v : violations) std::cout << v << "\n";
      if (violations.empty()) std::cout << scene_file << ": ok\n";
      return violations.empty() ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error [scene validate]: " << e.what() << "\n";
      return 1;
    }
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = LoadRunConfig(config_path);
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.Propagate();
    cfg.Validate();
  } catch (const std::exception& e) {
    std::cerr << "error [config]: " << e.what() << "\n";
    return 2;
  }

  try {
    if (suite->parsed()) CmdSuite(cfg, force, std::cout);
    if (pdf->parsed()) CmdPdf(cfg, force, std::cout);
    if (generate->parsed()) CmdGenerate(cfg, force, std::cout);
    if (select->parsed()) CmdSelect(cfg, force, std::cout);
    if (baseline->parsed()) {
      CmdBaseline(cfg, ParseBaselineKind(baseline_kind), force, std::cout);
    }
    if (eval->parsed()) CmdEval(cfg, force, std::cout);
    if (exp->parsed()) CmdExport(cfg, force, std::cout);
    if (pipeline->parsed()) CmdPipeline(cfg, force, std::cout);
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
