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

#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "viewscope/candidate.h"
#include "viewscope/candidate_gen.h"
#include "viewscope/errors.h"
#include "viewscope/json_util.h"
#include "viewscope/pdf.h"
#include "viewscope/suite.h"
#include "viewscope/tilt_prior.h"

namespace viewscope {
namespace {

using testing::Cat;
using testing::Obj;

// Category-uniform in (x, y), a single depth bin around `depth`.
CategoryPdfSet PdfOf(CategoryId c, double depth, int bins_xy = 16) {
  PdfConfig cfg;
  cfg.bins_x = bins_xy;
  cfg.bins_y = bins_xy;
  SemanticDepthImage img(bins_xy, bins_xy);
  for (size_t i = 0; i < img.size(); ++i) {
    img.category[i] = static_cast<std::uint8_t>(c);
    img.depth[i] = depth;
  }
  PdfAccumulator acc(cfg, 40);
  acc.AddImage(img);
  return CategoryPdfSet(acc);
}

GenConfig FastConfig() {
  GenConfig cfg;
  cfg.target_voxels = 1000;
  cfg.rays_per_voxel = 20;
  cfg.candidates_per_room = 60;
  cfg.keep_per_room = 10;
  cfg.score_width = 40;
  cfg.score_height = 30;
  cfg.seed = 17;
  return cfg;
}

const Suite& SmallSuite() {
  static const Suite suite = [] {
    SuiteParams p;
    p.example_images = 40;
    return GenerateSuite(p);
  }();
  return suite;
}

const CategoryPdfSet& SuitePdfs() {
  static const CategoryPdfSet pdfs = [] {
    PdfAccumulator acc(PdfConfig{}, 40);
    for (const auto& img : SmallSuite().examples.images) acc.AddImage(img);
    return CategoryPdfSet(acc);
  }();
  return pdfs;
}

TEST(VoxelGridTest, NearCubicCellsNearTarget) {
  const VoxelGrid g = MakeVoxelGrid({{0, 0, 0}, {6, 4, 2.5}}, 4000);
  EXPECT_GT(g.count(), 2000);
  EXPECT_LT(g.count(), 8000);
  const Vec3 s = g.CellSize();
  EXPECT_LT(std::max({s.x, s.y, s.z}) / std::min({s.x, s.y, s.z}), 2.0);
  const Box last = g.VoxelBox(g.count() - 1);
  EXPECT_NEAR(last.max.x, 6.0, 1e-9);
  EXPECT_NEAR(last.max.z, 2.5, 1e-9);
}

TEST(GenConfigTest, DefaultsAndValidation) {
  const GenConfig d;
  EXPECT_EQ(d.candidates_per_room, 1500);
  EXPECT_EQ(d.rays_per_voxel, 200);
  EXPECT_EQ(d.keep_per_room, 20);
  EXPECT_TRUE(d.divide_by_observation_frequency);
  GenConfig bad;
  bad.keep_per_room = 2000;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = GenConfig{};
  bad.target_voxels = 20;
  EXPECT_EQ(bad.ClampedTargetVoxels(), GenConfig::kMinVoxels);
}

TEST(WeightVoxelsTest, UniformModeGivesOnes) {
  const Scene scene = testing::OneRoomScene({{0, 0, 0}, {3, 3, 2.5}});
  GenConfig cfg = FastConfig();
  cfg.uniform_voxel_weights = true;
  const VoxelGrid grid = MakeVoxelGrid(scene.rooms()[0].bounds, 1000);
  Rng rng(1);
  const auto vw = WeightVoxels(scene, 0, grid, PdfOf(Cat("bed"), 1.0),
                               CategoryWeights::Uniform(40), TiltPrior::Default(),
                               cfg, rng);
  ASSERT_EQ(vw.weight.size(), static_cast<size_t>(grid.count()));
  for (double w : vw.weight) EXPECT_EQ(w, 1.0);
}

TEST(WeightVoxelsTest, ZeroPdfCategoriesGiveZeroWeight) {
  // Only shell categories are visible; the pdf only knows beds.
  const Scene scene = testing::OneRoomScene({{0, 0, 0}, {3, 3, 2.5}});
  Rng rng(2);
  const VoxelGrid grid = MakeVoxelGrid(scene.rooms()[0].bounds, 1000);
  const auto vw = WeightVoxels(scene, 0, grid, PdfOf(Cat("bed"), 1.0),
                               CategoryWeights::Uniform(40), TiltPrior::Default(),
                               FastConfig(), rng);
  EXPECT_TRUE(vw.AllZero());
  const auto rc = GenerateRoom(scene, 0, PdfOf(Cat("bed"), 1.0),
                               CategoryWeights::Uniform(40), TiltPrior::Default(),
                               FastConfig());
  EXPECT_TRUE(rc.zero_weight);
  EXPECT_TRUE(rc.candidates.empty());
}

TEST(WeightVoxelsTest, VoxelAtModalDepthOutweighsNearOne) {
  // A corridor ending in a bed-covered wall. The pdf puts every bed pixel
  // in depth bin [1, 2); voxel A sits 1-2 m from the bed, B within 1 m.
  const Box corridor{{0, 0, 0}, {8, 2, 2.5}};
  const Scene scene = testing::OneRoomScene(
      corridor, {Obj("bed", {{7.5, 0, 0}, {8, 2, 2.5}})});
  const VoxelGrid grid{{{5.5, 0.5, 0.75}, {7.5, 1.5, 1.75}}, 2, 1, 1};
  GenConfig cfg = FastConfig();
  cfg.rays_per_voxel = 2000;
  Rng rng(3);
  const auto vw = WeightVoxels(scene, 0, grid, PdfOf(Cat("bed"), 1.5),
                               CategoryWeights::Uniform(40),
                               TiltPrior::Gaussian(0.0, DegToRad(5.0)), cfg, rng);
  EXPECT_GT(vw.weight[0], vw.weight[1]);
  EXPECT_GT(vw.weight[0], 0.0);
}

TEST(SampleCandidatesTest, DegenerateWeightsPinEyes) {
  const Scene scene = testing::OneRoomScene({{0, 0, 0}, {4, 2, 2.5}});
  VoxelWeights vw;
  vw.room_id = "room_0";
  vw.grid = VoxelGrid{scene.rooms()[0].bounds, 2, 1, 1};
  vw.num_categories = 40;
  vw.weight = {1.0, 0.0};
  GenConfig cfg = FastConfig();
  cfg.candidates_per_room = 500;
  Rng rng(4);
  for (const Camera& c : SampleCandidates(scene, 0, vw, TiltPrior::Default(), cfg, rng)) {
    EXPECT_LE(c.position.x, 2.0);
  }
}

TEST(SampleCandidatesTest, FractionFollowsWeights) {
  const Scene scene = testing::OneRoomScene({{0, 0, 0}, {4, 2, 2.5}});
  VoxelWeights vw;
  vw.room_id = "room_0";
  vw.grid = VoxelGrid{scene.rooms()[0].bounds, 2, 1, 1};
  vw.num_categories = 40;
  vw.weight = {1.0, 3.0};
  GenConfig cfg = FastConfig();
  cfg.candidates_per_room = 40000;
  Rng rng(5);
  const auto cams = SampleCandidates(scene, 0, vw, TiltPrior::Default(), cfg, rng);
  ASSERT_EQ(cams.size(), 40000u);
  int second = 0;
  for (const Camera& c : cams) second += c.position.x > 2.0;
  EXPECT_NEAR(second / 40000.0, 0.75, 0.01);
}

TEST(SampleCandidatesTest, AllZeroWeightsThrow) {
  const Scene scene = testing::OneRoomScene({{0, 0, 0}, {4, 2, 2.5}});
  VoxelWeights vw;
  vw.room_id = "room_0";
  vw.grid = VoxelGrid{scene.rooms()[0].bounds, 2, 1, 1};
  vw.weight = {0.0, 0.0};
  Rng rng(6);
  EXPECT_THROW(SampleCandidates(scene, 0, vw, TiltPrior::Default(), FastConfig(), rng),
               AlgorithmError);
}

TEST(TiltPriorTest, GaussianPitchMean) {
  const TiltPrior tilt = TiltPrior::Gaussian(DegToRad(-10.0), DegToRad(15.0));
  std::mt19937_64 rng(7);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double p = tilt.SamplePitch(rng);
    ASSERT_LE(std::abs(p), TiltPrior::kMaxPitch);
    sum += p;
  }
  EXPECT_NEAR(sum / 10000, DegToRad(-10.0), DegToRad(1.0));
  EXPECT_EQ(tilt.SampleRoll(rng), 0.0);
}

TEST(TiltPriorTest, TabulatedFollowsSamples) {
  std::vector<double> samples(1000, DegToRad(-20.0));
  const TiltPrior tilt = TiltPrior::FromPitchSamples(samples, 18);
  EXPECT_TRUE(tilt.tabulated());
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    EXPECT_NEAR(tilt.SamplePitch(rng), DegToRad(-20.0), DegToRad(10.0));
  }
}

// --- scoring and filtering ---

SemanticDepthImage Uniform(int w, int h, int c, double d) {
  SemanticDepthImage img(w, h);
  for (size_t i = 0; i < img.size(); ++i) {
    img.category[i] = static_cast<std::uint8_t>(c);
    img.depth[i] = d;
  }
  return img;
}

TEST(ScoreTest, MeanLikelihoodAndDivisionSwitch) {
  const CategoryPdfSet pdfs = PdfOf(3, 1.2, 1);  // one (x, y) bin
  const auto w = CategoryWeights::Uniform(40);
  for (int side : {1, 5, 20}) {
    const auto img = Uniform(side, side, 3, 1.2);
    EXPECT_DOUBLE_EQ(ScoreCandidate(img, pdfs, w, true).per_category[3], 1.0);
    EXPECT_DOUBLE_EQ(ScoreCandidate(img, pdfs, w, false).per_category[3],
                     side * side * 1.0);
  }
}

TEST(ScoreTest, WeightsScaleAndBackgroundIsZero) {
  const CategoryPdfSet pdfs = PdfOf(3, 1.2, 1);
  CategoryWeights w = CategoryWeights::Uniform(40);
  w.w[3] = 2.5;
  const auto s = ScoreCandidate(Uniform(4, 4, 3, 1.2), pdfs, w, true);
  EXPECT_DOUBLE_EQ(s.per_category[3], 2.5);
  EXPECT_DOUBLE_EQ(s.aggregate, 2.5);
  const auto bg = ScoreCandidate(SemanticDepthImage(8, 6), pdfs, w, true);
  EXPECT_EQ(bg.per_category, std::vector<double>(40, 0.0));
  EXPECT_EQ(bg.aggregate, 0.0);
}

std::vector<Candidate> WithAggregates(const std::vector<double>& agg) {
  std::vector<Candidate> out;
  for (size_t i = 0; i < agg.size(); ++i) {
    Candidate c;
    c.id = static_cast<std::int64_t>(i);
    c.aggregate = agg[i];
    c.scores = {agg[i]};
    out.push_back(c);
  }
  return out;
}

std::vector<std::int64_t> Ids(const std::vector<Candidate>& cs) {
  std::vector<std::int64_t> ids;
  for (const auto& c : cs) ids.push_back(c.id);
  return ids;
}

TEST(FilterTopTest, KeepsBestInOrder) {
  EXPECT_EQ(Ids(FilterTop(WithAggregates({5, 1, 9}), 2)),
            (std::vector<std::int64_t>{2, 0}));
  EXPECT_EQ(Ids(FilterTop(WithAggregates({5, 1, 9}), 7)),
            (std::vector<std::int64_t>{2, 0, 1}));
  EXPECT_EQ(Ids(FilterTop(WithAggregates({4, 4, 7, 4}), 3)),
            (std::vector<std::int64_t>{2, 0, 1}));
}

// --- per-room generation ---

TEST(GenerateRoomTest, DefaultsKeepTwenty) {
  const Suite& suite = SmallSuite();
  GenConfig cfg;
  cfg.seed = 3;
  const auto rc = GenerateRoom(suite.scene, 0, SuitePdfs(),
                               CategoryWeights::Uniform(40), TiltPrior::Default(), cfg);
  EXPECT_EQ(rc.room_id, suite.scene.rooms()[0].id);
  ASSERT_EQ(rc.candidates.size(), 20u);
  for (size_t i = 1; i < rc.candidates.size(); ++i) {
    EXPECT_GE(rc.candidates[i - 1].aggregate, rc.candidates[i].aggregate);
  }
}

TEST(GenerateRoomTest, SingleCandidateMatchesDirectScore) {
  const Suite& suite = SmallSuite();
  GenConfig cfg = FastConfig();
  cfg.candidates_per_room = 1;
  cfg.keep_per_room = 1;
  const auto w = CategoryWeights::Uniform(40);
  const auto rc = GenerateRoom(suite.scene, 1, SuitePdfs(), w, TiltPrior::Default(), cfg);
  ASSERT_EQ(rc.candidates.size(), 1u);
  const Candidate& c = rc.candidates[0];
  const auto img = RenderView(suite.scene, c.camera, cfg.score_width, cfg.score_height);
  const ImageScore s = ScoreCandidate(img, SuitePdfs(), w, true);
  EXPECT_EQ(c.scores, s.per_category);
  EXPECT_EQ(c.aggregate, s.aggregate);
  EXPECT_EQ(c.room, suite.scene.rooms()[1].id);
}

TEST(GenerateRoomTest, CandidatesStayInsideTheRoom) {
  const Suite& suite = SmallSuite();
  const auto all = GenerateAll(suite.scene, SuitePdfs(), CategoryWeights::Uniform(40),
                               TiltPrior::Default(), FastConfig(), 2);
  ASSERT_EQ(all.size(), suite.scene.rooms().size());
  for (size_t r = 0; r < all.size(); ++r) {
    const Box& in = suite.scene.rooms()[r].bounds;
    for (const Candidate& c : all[r].candidates) {
      EXPECT_TRUE(in.Contains(c.camera.position));
      EXPECT_TRUE(c.camera.IsValid());
      for (const auto& b : suite.scene.boxes()) {
        EXPECT_FALSE(b.box.ContainsStrict(c.camera.position));
      }
    }
  }
}

TEST(GenerateRoomTest, DeterministicAcrossRunsAndWorkers) {
  const Suite& suite = SmallSuite();
  const auto w = CategoryWeights::Uniform(40);
  const auto a = GenerateAll(suite.scene, SuitePdfs(), w, TiltPrior::Default(), FastConfig(), 1);
  const auto b = GenerateAll(suite.scene, SuitePdfs(), w, TiltPrior::Default(), FastConfig(), 1);
  const auto c = GenerateAll(suite.scene, SuitePdfs(), w, TiltPrior::Default(), FastConfig(), 8);
  for (size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].candidates, b[r].candidates);
    EXPECT_EQ(a[r].candidates, c[r].candidates);
  }
  EXPECT_NE(RoomSeed(1, "bedroom_0"), RoomSeed(1, "living_0"));
  EXPECT_NE(RoomSeed(1, "bedroom_0"), RoomSeed(2, "bedroom_0"));
}

// --- candidate files ---

TEST(CandidateFileTest, RoundTripIsExact) {
  const auto dir = testing::TempDir("cands");
  Candidate c;
  c.id = 42;
  c.room = "kitchen_0";
  c.camera.position = {0.1, 1.0 / 3.0, 1.5};
  c.camera.yaw = 2.0 / 7.0;
  c.camera.pitch = -0.2;
  c.scores = {0.0, 1e-300, 3.25};
  c.aggregate = 3.25;
  c.whole_image = 9.5;
  CandidateFileHeader h;
  h.config_hash = "abcd";
  h.num_categories = 3;
  WriteCandidateFile(dir / "c.jsonl", h, {c});
  const CandidateFile back = ReadCandidateFile(dir / "c.jsonl");
  EXPECT_TRUE(back.has_header);
  EXPECT_EQ(back.header.config_hash, "abcd");
  ASSERT_EQ(back.candidates.size(), 1u);
  EXPECT_EQ(back.candidates[0], c);
  std::filesystem::remove_all(dir);
}

TEST(CandidateFileTest, ErrorsNameTheLine) {
  try {
    ParseCandidateText("{\"id\": 1, \"room\": \"r\"}\nnot json\n", "x.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x.jsonl"), std::string::npos);
  }
  EXPECT_THROW(ReadCandidateFile("/nonexistent/c.jsonl"), IoError);
}

}  // namespace
}  // namespace viewscope
