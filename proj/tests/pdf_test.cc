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
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "viewscope/errors.h"
#include "viewscope/example_set.h"
#include "viewscope/json_util.h"
#include "viewscope/pdf.h"
#include "viewscope/pgm.h"
#include "viewscope/weights.h"

namespace viewscope {
namespace {

PdfConfig Small(int bins_d = 4) {
  PdfConfig c;
  c.bins_x = 4;
  c.bins_y = 4;
  c.bins_d = bins_d;
  c.d_max = 4.0;
  return c;
}

SemanticDepthImage OnePixel(int category, double depth) {
  SemanticDepthImage img(1, 1);
  img.category[0] = static_cast<std::uint8_t>(category);
  img.depth[0] = depth;
  return img;
}

CategoryPdfSet Estimate(const PdfConfig& cfg, int n,
                        const std::vector<SemanticDepthImage>& images) {
  PdfAccumulator acc(cfg, n);
  for (const auto& img : images) acc.AddImage(img);
  return CategoryPdfSet(acc);
}

double Sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// Random labeled image with some background and some far pixels.
SemanticDepthImage RandomImage(std::mt19937_64& rng, int w, int h, int n) {
  std::uniform_int_distribution<int> cat(0, n);
  std::uniform_real_distribution<double> d(0.2, 12.0);
  SemanticDepthImage img(w, h);
  for (size_t i = 0; i < img.size(); ++i) {
    const int c = cat(rng);
    if (c == n) continue;
    img.category[i] = static_cast<std::uint8_t>(c);
    img.depth[i] = d(rng);
  }
  return img;
}

TEST(PdfTest, PointMass) {
  const auto pdfs = Estimate(Small(), 40, {OnePixel(3, 1.0)});
  const auto h = pdfs.Histogram(3);
  for (size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(h[i], i == pdfs.CellIndex(0, 0, 0, 1) ? 1.0 : 0.0);
  }
  EXPECT_EQ(pdfs.BinValue(3, 0, 0, 1), 1.0);
  EXPECT_EQ(pdfs.Likelihood(3, 0.1, 0.1, 1.2), 1.0);
  EXPECT_EQ(pdfs.Likelihood(3, 0.1, 0.1, 2.2), 0.0);
  EXPECT_EQ(pdfs.Likelihood(5, 0.1, 0.1, 1.2), 0.0);
  EXPECT_TRUE(pdfs.IsEmpty(5));
  EXPECT_EQ(pdfs.DepthMarginal(3, 1.5), 1.0);
  EXPECT_EQ(pdfs.DepthMarginal(3, 3.5), 0.0);
}

TEST(PdfTest, DepthBeyondMaxClampsToLastBin) {
  const auto pdfs = Estimate(Small(), 40, {OnePixel(3, 9.0)});
  EXPECT_EQ(pdfs.Likelihood(3, 0, 0, 4.0 + 5.0), 1.0);
  EXPECT_EQ(pdfs.Likelihood(3, 0, 0, 3.9), 1.0);
  EXPECT_EQ(pdfs.DepthBin(100.0), 3);
  EXPECT_EQ(pdfs.XBin(0.999), 3);
}

// Simpson integral of the N(mu, sigma) density over [a, b].
double GaussMass(double mu, double sigma, double a, double b) {
  const int n = 2000;
  const double step = (b - a) / n;
  auto f = [&](double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * M_PI));
  };
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * step) * (i % 2 ? 4 : 2);
  return s * step / 3;
}

TEST(PdfTest, SingleImageGaussianMatchesBinIntegrals) {
  PdfConfig cfg = Small();
  cfg.single_image_mode = true;
  cfg.depth_sigma_frac = 0.1;
  const auto pdfs = Estimate(cfg, 40, {OnePixel(3, 1.0)});
  // Depth 1 m sits at bin coordinate 1.0; sigma is 0.1 * 4 bins.
  std::vector<double> want(4);
  for (int b = 0; b < 4; ++b) want[b] = GaussMass(1.0, 0.4, b, b + 1);
  const double total = std::accumulate(want.begin(), want.end(), 0.0);
  for (int b = 0; b < 4; ++b) {
    EXPECT_NEAR(pdfs.BinValue(3, 0, 0, b), want[b] / total, 1e-9) << b;
  }
  EXPECT_NEAR(Sum(pdfs.Histogram(3)), 1.0, 1e-9);
  EXPECT_GT(pdfs.BinValue(3, 0, 0, 1), pdfs.BinValue(3, 0, 0, 2));
}

TEST(PdfTest, CategoriesNormalizedIndependently) {
  SemanticDepthImage a(2, 2), b(3, 1);
  for (size_t i = 0; i < a.size(); ++i) a.category[i] = 1, a.depth[i] = 1.5;
  for (size_t i = 0; i < b.size(); ++i) b.category[i] = 2, b.depth[i] = 3.5;
  const auto pdfs = Estimate(Small(), 40, {a, b});
  EXPECT_NEAR(Sum(pdfs.Histogram(1)), 1.0, 1e-12);
  EXPECT_NEAR(Sum(pdfs.Histogram(2)), 1.0, 1e-12);
  EXPECT_EQ(pdfs.Observations(1), 4);
  EXPECT_EQ(pdfs.Observations(2), 3);
}

TEST(PdfTest, NormalizationAndMarginalsOnRandomSets) {
  std::mt19937_64 rng(5);
  for (bool gaussian : {false, true}) {
    PdfConfig cfg;
    cfg.single_image_mode = gaussian;
    std::vector<SemanticDepthImage> images;
    for (int i = 0; i < 4; ++i) images.push_back(RandomImage(rng, 40, 30, 12));
    const auto pdfs = Estimate(cfg, 12, images);
    for (int c = 0; c < 12; ++c) {
      ASSERT_FALSE(pdfs.IsEmpty(c));
      EXPECT_NEAR(Sum(pdfs.Histogram(c)), 1.0, 1e-9);
      double marg = 0.0;
      for (int db = 0; db < cfg.bins_d; ++db) marg += pdfs.DepthMarginalBin(c, db);
      EXPECT_NEAR(marg, 1.0, 1e-9);
    }
  }
}

TEST(PdfTest, UniformHistogramGivesQuarterSlices) {
  std::vector<SemanticDepthImage> images;
  for (double d : {0.5, 1.5, 2.5, 3.5}) images.push_back(OnePixel(0, d));
  const auto pdfs = Estimate(Small(), 2, images);
  for (double d : {0.5, 1.5, 2.5, 3.5}) EXPECT_DOUBLE_EQ(pdfs.DepthMarginal(0, d), 0.25);
}

TEST(PdfTest, RgbModeEqualsOneDepthBin) {
  std::mt19937_64 rng(9);
  std::vector<SemanticDepthImage> images;
  for (int i = 0; i < 3; ++i) images.push_back(RandomImage(rng, 32, 24, 10));
  PdfConfig rgb;
  rgb.mode = PixelMode::kRgb2d;
  PdfConfig one;
  one.bins_d = 1;
  const auto a = Estimate(rgb, 10, images);
  const auto b = Estimate(one, 10, images);
  for (int c = 0; c < 10; ++c) {
    const auto ha = a.Histogram(c), hb = b.Histogram(c);
    ASSERT_EQ(ha.size(), hb.size());
    for (size_t i = 0; i < ha.size(); ++i) ASSERT_EQ(ha[i], hb[i]);
  }
  // Depth is ignored entirely in RGB mode.
  for (auto& img : images) std::fill(img.depth.begin(), img.depth.end(), kNoDepth);
  const auto c = Estimate(rgb, 10, images);
  for (int k = 0; k < 10; ++k) {
    const auto ha = a.Histogram(k), hc = c.Histogram(k);
    for (size_t i = 0; i < ha.size(); ++i) ASSERT_EQ(ha[i], hc[i]);
  }
}

TEST(PdfTest, MergeIsOrderIndependent) {
  std::mt19937_64 rng(3);
  std::vector<SemanticDepthImage> images;
  for (int i = 0; i < 6; ++i) images.push_back(RandomImage(rng, 20, 10, 8));
  PdfConfig cfg;
  PdfAccumulator whole(cfg, 8), left(cfg, 8), right(cfg, 8);
  for (int i = 0; i < 6; ++i) {
    whole.AddImage(images[i]);
    (i < 3 ? left : right).AddImage(images[i]);
  }
  left.Merge(right);
  const CategoryPdfSet a(whole), b(left);
  for (int c = 0; c < 8; ++c) {
    const auto ha = a.Histogram(c), hb = b.Histogram(c);
    for (size_t i = 0; i < ha.size(); ++i) EXPECT_NEAR(ha[i], hb[i], 1e-15);
  }
  PdfConfig other = cfg;
  other.bins_x = 8;
  PdfAccumulator mismatched(other, 8);
  EXPECT_THROW(whole.Merge(mismatched), std::invalid_argument);
}

TEST(PdfTest, SerializeRoundTrip) {
  std::mt19937_64 rng(4);
  const auto pdfs = Estimate(PdfConfig{}, 6, {RandomImage(rng, 30, 20, 5)});
  const auto back = CategoryPdfSet::Deserialize(pdfs.Serialize("abc"), "mem");
  EXPECT_TRUE(back == pdfs);
  EXPECT_TRUE(back.IsEmpty(5));
  EXPECT_THROW(CategoryPdfSet::Deserialize("{}", "mem"), ParseError);
}

TEST(PdfTest, InvalidConfigRejected) {
  PdfConfig c;
  c.bins_x = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = PdfConfig{};
  c.d_max = -1;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = PdfConfig{};
  c.depth_sigma_frac = 0.0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

// --- weights ---

TEST(WeightsTest, RebalanceRatio) {
  const CategoryTable table({"a", "b", "c"});
  const std::vector<double> ex{10, 5, 3}, sc{10, 10, 0};
  const CategoryWeights w = ComputeRebalanceWeights(ex, sc, table);
  EXPECT_DOUBLE_EQ(w[0], 1.0);
  EXPECT_DOUBLE_EQ(w[1], 0.5);
  EXPECT_DOUBLE_EQ(w[2], 0.0);
}

TEST(WeightsTest, StructuralForcedToOne) {
  const CategoryTable table = CategoryTable::Nyu40();
  std::vector<double> ex(40, 2.0), sc(40, 1.0);
  const CategoryWeights w = ComputeRebalanceWeights(ex, sc, table);
  EXPECT_EQ(w[testing::Cat("wall")], 1.0);
  EXPECT_EQ(w[testing::Cat("floor")], 1.0);
  EXPECT_EQ(w[testing::Cat("ceiling")], 1.0);
  EXPECT_EQ(w[testing::Cat("bed")], 2.0);
}

TEST(WeightsTest, BundledFileSpotChecks) {
  const CategoryTable table = CategoryTable::Nyu40();
  const CategoryWeights w = LoadCategoryWeights(
      std::filesystem::path(VIEWSCOPE_DATA_DIR) / "nyu40_weights.json", table);
  ASSERT_EQ(w.size(), 40);
  EXPECT_NEAR(w[testing::Cat("wall")], 1.0000, 5e-5);
  EXPECT_NEAR(w[testing::Cat("pillow")], 11.8598, 5e-5);
  EXPECT_NEAR(w[testing::Cat("clothes")], 38.6042, 5e-5);
  EXPECT_NEAR(w[testing::Cat("otherfurniture")], 497.8754, 5e-5);
}

TEST(WeightsTest, SaveLoadRoundTripAndErrors) {
  const auto dir = testing::TempDir("weights");
  const CategoryTable table({"a", "b", "c"});
  const CategoryWeights w{{1.5, 0.0, 2.25}};
  SaveCategoryWeights(dir / "w.json", w, table);
  EXPECT_EQ(LoadCategoryWeights(dir / "w.json", table).w, w.w);
  EXPECT_THROW(LoadCategoryWeights(dir / "w.json", CategoryTable({"a", "x", "c"})),
               ParseError);
  WriteTextFile(dir / "neg.json",
                R"({"categories":["a","b","c"],"weights":[1,-1,1]})");
  EXPECT_THROW(LoadCategoryWeights(dir / "neg.json", table), ValidationError);
  std::filesystem::remove_all(dir);
}

// --- example sets ---

TEST(ExampleSetTest, SaveLoadTwoImages) {
  const auto dir = testing::TempDir("examples");
  ExampleSet set;
  set.images = {OnePixel(3, 1.25), OnePixel(kBackground, kNoDepth)};
  SaveExampleSet(dir, set);
  const ExampleSet back = LoadExampleSet(dir, PixelMode::kRgbd, 40);
  ASSERT_EQ(back.images.size(), 2u);
  EXPECT_EQ(back.images[0].category[0], 3);
  EXPECT_DOUBLE_EQ(back.images[0].depth[0], 1.25);
  EXPECT_EQ(back.images[1].category[0], kBackground);
  std::filesystem::remove_all(dir);
}

TEST(ExampleSetTest, DepthSizeMismatchRejected) {
  const auto dir = testing::TempDir("examples_size");
  WritePgm(dir / "0_cat.pgm",
           {640, 480, 255, std::vector<std::uint16_t>(640 * 480, 1)});
  WritePgm(dir / "0_dep.pgm",
           {320, 240, 65535, std::vector<std::uint16_t>(320 * 240, 900)});
  WriteTextFile(dir / "manifest.json",
                R"({"width":640,"height":480,"images":[{"category":"0_cat.pgm"}]})");
  try {
    LoadExampleSet(dir, PixelMode::kRgbd, 40);
    FAIL() << "expected a size mismatch";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("size mismatch"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(ExampleSetTest, RgbDirectoryLoadedAsRgbdNamesMissingDepth) {
  const auto dir = testing::TempDir("examples_rgb");
  ExampleSet set;
  set.mode = PixelMode::kRgb2d;
  set.images = {OnePixel(3, kNoDepth), OnePixel(4, kNoDepth)};
  SaveExampleSet(dir, set);
  EXPECT_EQ(LoadExampleSet(dir, PixelMode::kRgb2d, 40).images.size(), 2u);
  try {
    LoadExampleSet(dir, PixelMode::kRgbd, 40);
    FAIL() << "expected a missing depth error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("000_dep.pgm"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(ExampleSetTest, BadCategoryAndZeroDepthRejected) {
  const auto dir = testing::TempDir("examples_bad");
  ExampleSet set;
  set.images = {OnePixel(39, 1.0)};
  SaveExampleSet(dir, set);
  EXPECT_THROW(LoadExampleSet(dir, PixelMode::kRgbd, 20), ValidationError);
  WritePgm(dir / "000_dep.pgm", {1, 1, 65535, {0}});
  EXPECT_THROW(LoadExampleSet(dir, PixelMode::kRgbd, 40), ValidationError);
  EXPECT_THROW(LoadExampleSet(dir / "nope", PixelMode::kRgbd, 40), IoError);
  std::filesystem::remove_all(dir);
}

TEST(ExampleSetTest, ImageOccurrenceCountsImagesNotPixels) {
  SemanticDepthImage a(2, 1);
  a.category = {1, 1};
  const SemanticDepthImage b = OnePixel(1, 1.0), c = OnePixel(2, 1.0);
  const auto occ = ImageOccurrence({a, b, c}, 3);
  EXPECT_EQ(occ, (std::vector<double>{0, 2, 1}));
}

}  // namespace
}  // namespace viewscope
