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

#include "viewscope/pipeline.h"

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>

#include "json.hpp"
#include "viewscope/candidate.h"
#include "viewscope/errors.h"
#include "viewscope/example_set.h"
#include "viewscope/json_util.h"
#include "viewscope/render.h"
#include "viewscope/scene.h"
#include "viewscope/select.h"
#include "viewscope/suite.h"
#include "viewscope/weights.h"

#ifndef VIEWSCOPE_DATA_DIR
#define VIEWSCOPE_DATA_DIR "data"
#endif

namespace viewscope {

namespace fs = std::filesystem;

namespace {

constexpr BaselineKind kBaselineOrder[] = {
    BaselineKind::kRand, BaselineKind::kHum, BaselineKind::kCat,
    BaselineKind::kTraj, BaselineKind::kHeur};

template <typename Fn>
auto RunStage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

void Prepare(const RunConfig& cfg) {
  cfg.Validate();
}

void RefuseExisting(const fs::path& path, bool force) {
  if (!force && fs::exists(path)) {
    throw IoError(path.string() +
                  " already exists; pass --force to overwrite it");
  }
}

void RequireUpstream(const fs::path& path, const std::string& what,
                     const std::string& producer) {
  if (!fs::exists(path)) {
    throw IoError(what + " " + path.string() + " not found; run `viewscope " +
                  producer + "` first");
  }
}

Scene LoadRunScene(const RunPaths& paths) {
  RequireUpstream(paths.scene, "scene", "suite");
  return LoadScene(paths.scene);
}

ExampleSet LoadRunExamples(const RunPaths& paths, const RunConfig& cfg,
                           const Scene& scene) {
  RequireUpstream(paths.examples, "example set", "suite");
  ExampleSet set = LoadExampleSet(paths.examples, cfg.pdf.mode,
                                  scene.categories().size());
  if (set.categories && !(*set.categories == scene.categories())) {
    throw ValidationError("example set " + paths.examples.string() +
                          " uses a different category table than the scene");
  }
  return set;
}

CandidateFileHeader MakeHeader(const RunConfig& cfg, const Scene& scene,
                               const std::string& producer) {
  CandidateFileHeader h;
  h.config_hash = cfg.Hash();
  h.categories_fingerprint = scene.categories().Fingerprint();
  h.num_categories = scene.categories().size();
  h.hfov = cfg.gen.hfov;
  h.aspect = cfg.gen.aspect;
  h.producer = producer;
  return h;
}

CandidateFile ReadCameras(const fs::path& path, const Scene& scene) {
  CandidateFile file = ReadCandidateFile(path);
  if (file.has_header &&
      file.header.categories_fingerprint != scene.categories().Fingerprint()) {
    throw ValidationError(path.string() +
                          " was produced with a different category table");
  }
  return file;
}

CategoryWeights ResolveWeights(const RunConfig& cfg, const Scene& scene,
                               const ExampleSet& examples) {
  const CategoryTable& table = scene.categories();
  const int n = table.size();
  if (cfg.weights == "uniform") return CategoryWeights::Uniform(n);
  if (cfg.weights == "nyu40") {
    return LoadCategoryWeights(fs::path(VIEWSCOPE_DATA_DIR) / "nyu40_weights.json",
                               table);
  }
  if (cfg.weights == "rebalance") {
    // Fraction of example images showing c over fraction of rooms holding c.
    std::vector<double> example_freq = ImageOccurrence(examples.images, n);
    for (double& v : example_freq) {
      v /= static_cast<double>(std::max<size_t>(examples.images.size(), 1));
    }
    std::vector<double> scene_freq(n, 0.0);
    for (const Room& room : scene.rooms()) {
      std::vector<char> seen(n, 0);
      for (const SceneObject& obj : room.objects) seen[obj.category] = 1;
      for (int c = 0; c < n; ++c) scene_freq[c] += seen[c];
    }
    for (double& v : scene_freq) {
      v /= static_cast<double>(std::max<size_t>(scene.rooms().size(), 1));
    }
    return ComputeRebalanceWeights(example_freq, scene_freq, table);
  }
  return LoadCategoryWeights(cfg.weights, table);
}

std::vector<SemanticDepthImage> RenderCameras(const Scene& scene,
                                              const std::vector<Candidate>& cams,
                                              int width, int height) {
  std::vector<SemanticDepthImage> out;
  out.reserve(cams.size());
  for (const Candidate& c : cams) {
    out.push_back(RenderView(scene, c.camera, width, height));
  }
  return out;
}

std::vector<Candidate> SelectedCameras(const RunPaths& paths,
                                       const Scene& scene) {
  RequireUpstream(paths.candidates, "candidate file", "generate");
  RequireUpstream(paths.selection, "selection manifest", "select");
  const CandidateFile file = ReadCameras(paths.candidates, scene);
  const ViewSet set = ReadSelectionManifest(paths.selection);
  std::map<std::int64_t, const Candidate*> by_id;
  for (const Candidate& c : file.candidates) by_id[c.id] = &c;
  std::vector<Candidate> out;
  for (const Pick& p : set.picks) {
    const auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      throw ValidationError("selection picks id " + std::to_string(p.id) +
                            " which is not in " + paths.candidates.string());
    }
    out.push_back(*it->second);
  }
  return out;
}

}  // namespace

fs::path RunPaths::Baseline(BaselineKind kind) const {
  return baselines_dir / (std::string(BaselineName(kind)) + ".jsonl");
}

RunPaths ResolvePaths(const RunConfig& cfg) {
  const fs::path& out = cfg.output_dir;
  const SuitePaths suite = SuiteOutputPaths(out, "apartment_" + cfg.suite.preset);
  RunPaths p;
  p.scene = cfg.scene.empty() ? suite.scene : cfg.scene;
  p.truth = suite.truth;
  p.examples = cfg.examples.empty() ? suite.examples : cfg.examples;
  p.pdfs = out / "pdfs" / "pdfs.json";
  p.weights = out / "pdfs" / "weights.json";
  p.candidates = out / "candidates" / "candidates.jsonl";
  p.selection = out / "selection" / "selection.json";
  p.baselines_dir = out / "baselines";
  p.eval_dir = out / "eval";
  p.views = out / "views";
  p.summary = out / "summary.txt";
  return p;
}

void CmdSuite(const RunConfig& cfg, bool force, std::ostream& log) {
  RunStage("suite", [&] {
    Prepare(cfg);
    const SuitePaths paths =
        SuiteOutputPaths(cfg.output_dir, "apartment_" + cfg.suite.preset);
    RefuseExisting(paths.scene, force);
    const Suite suite = GenerateSuite(cfg.suite);
    WriteSuite(cfg.output_dir, suite);
    log << "suite: " << suite.scene.rooms().size() << " rooms, "
        << suite.examples.images.size() << " example images -> "
        << paths.scene.string() << "\n";
  });
}

void CmdPdf(const RunConfig& cfg, bool force, std::ostream& log) {
  RunStage("pdf", [&] {
    Prepare(cfg);
    const RunPaths paths = ResolvePaths(cfg);
    RefuseExisting(paths.pdfs, force);
    const Scene scene = LoadRunScene(paths);
    const ExampleSet examples = LoadRunExamples(paths, cfg, scene);
    const CategoryPdfSet pdfs =
        EstimatePdfs(examples, cfg.pdf, scene.categories().size());
    SavePdfSet(paths.pdfs, pdfs, cfg.Hash());
    const CategoryWeights weights = ResolveWeights(cfg, scene, examples);
    SaveCategoryWeights(paths.weights, weights, scene.categories());
    log << "pdf: " << examples.images.size() << " images, weights '"
        << cfg.weights << "' -> " << paths.pdfs.string() << "\n";
  });
}

void CmdGenerate(const RunConfig& cfg, bool force, std::ostream& log) {
  RunStage("generate", [&] {
    Prepare(cfg);
    const RunPaths paths = ResolvePaths(cfg);
    RefuseExisting(paths.candidates, force);
    const Scene scene = LoadRunScene(paths);
    RequireUpstream(paths.pdfs, "pdf file", "pdf");
    RequireUpstream(paths.weights, "weight file", "pdf");
    const CategoryPdfSet pdfs = LoadPdfSet(paths.pdfs);
    if (pdfs.num_categories() != scene.categories().size()) {
      throw ValidationError(paths.pdfs.string() +
                            " has a different category count than the scene");
    }
    const CategoryWeights weights =
        LoadCategoryWeights(paths.weights, scene.categories());
    const std::vector<RoomCandidates> rooms =
        GenerateAll(scene, pdfs, weights, cfg.Tilt(), cfg.gen, cfg.workers);
    std::vector<Candidate> all;
    for (const RoomCandidates& r : rooms) {
      if (r.zero_weight) {
        log << "generate: warning: room '" << r.room_id
            << "' skipped, every voxel weight is zero\n";
      }
      all.insert(all.end(), r.candidates.begin(), r.candidates.end());
    }
    WriteCandidateFile(paths.candidates, MakeHeader(cfg, scene, "generate"), all);
    log << "generate: " << all.size() << " candidates over " << rooms.size()
        << " rooms -> " << paths.candidates.string() << "\n";
  });
}

void CmdSelect(const RunConfig& cfg, bool force, std::ostream& log) {
  RunStage("select", [&] {
    Prepare(cfg);
    const RunPaths paths = ResolvePaths(cfg);
    RefuseExisting(paths.selection, force);
    RequireUpstream(paths.candidates, "candidate file", "generate");
    const CandidateFile file = ReadCandidateFile(paths.candidates);
    if (file.candidates.empty()) {
      throw AlgorithmError("candidate file holds no candidates");
    }
    const int n = file.has_header
                      ? file.header.num_categories
                      : static_cast<int>(file.candidates.front().scores.size());
    SelectionConfig sel = SelectionConfig::Default(cfg.select_k, n);
    if (cfg.select_h.size() == 1) {
      sel.h.assign(n, cfg.select_h[0]);
    } else if (!cfg.select_h.empty()) {
      if (static_cast<int>(cfg.select_h.size()) != n) {
        throw std::invalid_argument("select.h lists " +
                                    std::to_string(cfg.select_h.size()) +
                                    " values for " + std::to_string(n) +
                                    " categories");
      }
      sel.h = cfg.select_h;
    }
    const ViewSet set = cfg.lazy ? LazyGreedySelect(file.candidates, sel)
                                 : GreedySelect(file.candidates, sel);
    WriteSelectionManifest(paths.selection, set, cfg.Hash());
    char objective[32];
    std::snprintf(objective, sizeof(objective), "%.6g", set.objective);
    log << "select: " << set.picks.size() << " of " << file.candidates.size()
        << " views, objective " << objective << " -> "
        << paths.selection.string() << "\n";
  });
}

void CmdBaseline(const RunConfig& cfg, BaselineKind kind, bool force,
                 std::ostream& log) {
  const std::string stage = std::string("baseline ") + BaselineName(kind);
  RunStage(stage, [&] {
    Prepare(cfg);
    const RunPaths paths = ResolvePaths(cfg);
    const fs::path out = paths.Baseline(kind);
    RefuseExisting(out, force);
    const Scene scene = LoadRunScene(paths);
    const BaselineViews views = RunBaseline(kind, scene, cfg.baseline);
    for (const std::string& w : views.warnings) {
      log << stage << ": warning: " << w << "\n";
    }
    WriteCandidateFile(out, MakeHeader(cfg, scene, stage), views.views);
    log << stage << ": " << views.views.size() << " views -> " << out.string()
        << "\n";
  });
}

std::vector<std::pair<std::string, EmdReport>> CmdEval(const RunConfig& cfg,
                                                       bool force,
                                                       std::ostream& log) {
  return RunStage("eval", [&] {
    Prepare(cfg);
    const RunPaths paths = ResolvePaths(cfg);
    RefuseExisting(paths.eval_dir / "summary.txt", force);
    const Scene scene = LoadRunScene(paths);
    const ExampleSet examples = LoadRunExamples(paths, cfg, scene);

    std::vector<std::pair<std::string, std::vector<Candidate>>> sets;
    if (fs::exists(paths.selection)) {
      sets.emplace_back("datamatch", SelectedCameras(paths, scene));
    }
    for (const BaselineKind k : kBaselineOrder) {
      if (fs::exists(paths.Baseline(k))) {
        sets.emplace_back(BaselineName(k),
                          ReadCameras(paths.Baseline(k), scene).candidates);
      }
    }
    if (sets.empty()) {
      throw IoError("nothing to evaluate under " + cfg.output_dir.string() +
                    "; run `viewscope select` or `viewscope baseline <kind>` "
                    "first");
    }
    std::vector<std::pair<std::string, EmdReport>> reports;
    std::string summary;
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8s %6s\n", "set", "x",
                  "y", "depth", "mean", "views");
    summary += line;
    for (const auto& [name, cams] : sets) {
      std::vector<SemanticDepthImage> images =
          RenderCameras(scene, cams, cfg.eval_width, cfg.eval_height);
      // Same depth precision as the stored examples.
      for (SemanticDepthImage& img : images) QuantizeDepth(img);
      EmdReport report =
          EvaluateSets(images, examples.images, scene.categories(), cfg.emd);
      WriteEmdReport(paths.eval_dir / (name + ".json"),
                     paths.eval_dir / (name + ".csv"), report);
      std::snprintf(line, sizeof(line), "%-10s %8.4f %8.4f %8.4f %8.4f %6zu\n",
                    name.c_str(), report.axis_means[0], report.axis_means[1],
                    report.axis_means[2], report.grand_mean, cams.size());
      summary += line;
      reports.emplace_back(name, std::move(report));
    }
    WriteTextFile(paths.eval_dir / "summary.txt", summary);
    log << "eval: grand-mean EMD per set\n" << summary;
    return reports;
  });
}

void CmdExport(const RunConfig& cfg, bool force, std::ostream& log) {
  RunStage("export", [&] {
    Prepare(cfg);
    const RunPaths paths = ResolvePaths(cfg);
    RefuseExisting(paths.views / "manifest.json", force);
    const Scene scene = LoadRunScene(paths);
    const std::vector<Candidate> cams = SelectedCameras(paths, scene);
    ExampleSet views;
    views.name = "datamatch";
    views.mode = PixelMode::kRgbd;
    views.categories = scene.categories();
    views.images =
        RenderCameras(scene, cams, cfg.export_width, cfg.export_height);
    SaveExampleSet(paths.views, views);
    WriteCandidateFile(paths.views / "cameras.jsonl",
                       MakeHeader(cfg, scene, "export"), cams);
    log << "export: " << cams.size() << " views -> " << paths.views.string()
        << "\n";
  });
}

void CmdPipeline(const RunConfig& cfg, bool force, std::ostream& log) {
  RunStage("pipeline", [&] {
    Prepare(cfg);
    if (!force && fs::exists(cfg.output_dir) &&
        !fs::is_empty(cfg.output_dir)) {
      throw IoError("output directory " + cfg.output_dir.string() +
                    " is not empty; pass --force to overwrite it");
    }
  });
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (cfg.scene.empty() || cfg.examples.empty()) CmdSuite(cfg, true, log);
  CmdPdf(cfg, true, log);
  CmdGenerate(cfg, true, log);
  CmdSelect(cfg, true, log);
  for (const BaselineKind k : kBaselineOrder) CmdBaseline(cfg, k, true, log);
  const auto reports = CmdEval(cfg, true, log);
  CmdExport(cfg, true, log);

  RunStage("pipeline", [&] {
    const RunPaths paths = ResolvePaths(cfg);
    std::string summary = "viewscope run summary\n\nconfig hash: " +
                          cfg.Hash() + "\n\n[config]\n" + cfg.Echo() + "\n";
    for (const auto& [name, report] : reports) {
      summary += "[emd " + name + "]\n" + report.ToTable() + "\n";
    }
    summary += "[emd grand means]\n" +
               ReadTextFile(paths.eval_dir / "summary.txt");
    WriteTextFile(paths.summary, summary);
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    char line[96];
    std::snprintf(line, sizeof(line), "pipeline: done in %.1f s -> ", seconds);
    log << line << paths.summary.string() << "\n";
  });
}

}  // namespace viewscope
