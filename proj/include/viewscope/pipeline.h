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

// The CLI verbs as library calls. Stages talk only through files under the
// output directory:
//
//   scenes/     suite scene + ground-truth cameras
//   examples/   suite example set (when no external set is configured)
//   pdfs/       category pdfs and category weights
//   candidates/ filtered, scored candidates of every room
//   selection/  selection manifest
//   baselines/  one camera file per baseline
//   eval/       EMD reports (json + csv) and a summary table per set
//   views/      exported category/depth PGM pairs of the selection

#ifndef VIEWSCOPE_PIPELINE_H_
#define VIEWSCOPE_PIPELINE_H_

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "viewscope/baselines.h"
#include "viewscope/emd.h"
#include "viewscope/run_config.h"

namespace viewscope {

// A stage failure; what() carries the underlying message.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RunPaths {
  std::filesystem::path scene;
  std::filesystem::path truth;
  std::filesystem::path examples;
  std::filesystem::path pdfs;
  std::filesystem::path weights;
  std::filesystem::path candidates;
  std::filesystem::path selection;
  std::filesystem::path baselines_dir;
  std::filesystem::path eval_dir;
  std::filesystem::path views;
  std::filesystem::path summary;

  std::filesystem::path Baseline(BaselineKind kind) const;
};

RunPaths ResolvePaths(const RunConfig& cfg);

// Each verb throws StageError naming itself. Existing outputs are only
// replaced with `force`.
void CmdSuite(const RunConfig& cfg, bool force, std::ostream& log);
void CmdPdf(const RunConfig& cfg, bool force, std::ostream& log);
void CmdGenerate(const RunConfig& cfg, bool force, std::ostream& log);
void CmdSelect(const RunConfig& cfg, bool force, std::ostream& log);
void CmdBaseline(const RunConfig& cfg, BaselineKind kind, bool force,
                 std::ostream& log);
// Evaluates the selection and every baseline file present. Returns
// (set name, report) in a fixed order: datamatch, rand, hum, cat, traj, heur.
std::vector<std::pair<std::string, EmdReport>> CmdEval(const RunConfig& cfg,
                                                       bool force,
                                                       std::ostream& log);
void CmdExport(const RunConfig& cfg, bool force, std::ostream& log);
// suite -> pdf -> generate -> select -> baselines -> eval -> export, then a
// run summary. Refuses a nonempty output directory without `force`.
void CmdPipeline(const RunConfig& cfg, bool force, std::ostream& log);

}  // namespace viewscope

#endif  // VIEWSCOPE_PIPELINE_H_
