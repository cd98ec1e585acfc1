// Copyright 2026 The pdbench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "pdbench/niqe.h"
#include "synthetic.h"

namespace pdbench::niqe {
namespace {

TEST(MscnTest, SingleBrightPixelMatchesWindowedOracle) {
  YPlane y = YPlane::Constant(15, 15, 50.0);
  y(7, 7) = 250.0;
  const YPlane mscn = ComputeMscn(y);
  for (int r = 0; r < 15; ++r)
    for (int c = 0; c < 15; ++c)
      EXPECT_NEAR(mscn(r, c), testing::DirectMscn(y, r, c), 1e-9);
  EXPECT_GT(mscn(7, 7), 0.0);
  EXPECT_NEAR(mscn(0, 0), 0.0, 1e-12);
}

TEST(MscnTest, TexturedPlaneMatchesOracleNearEdges) {
  const YPlane y = testing::DeadLeaves(20, 23, 4);
  const YPlane mscn = ComputeMscn(y);
  for (int r : {0, 1, 2, 10, 18, 19})
    for (int c : {0, 2, 11, 21, 22})
      EXPECT_NEAR(mscn(r, c), testing::DirectMscn(y, r, c), 1e-9);
}

TEST(MscnTest, ConstantImageIsZero) {
  EXPECT_LT(ComputeMscn(YPlane::Constant(9, 9, 100.0)).abs().maxCoeff(), 1e-12);
  EXPECT_THROW(ComputeMscn(YPlane::Zero(6, 30)), Error);
}

TEST(AggdTest, MomentRatioAtGaussian) {
  EXPECT_NEAR(AggdMomentRatio(2.0), 2.0 / std::numbers::pi, 1e-14);
  EXPECT_NEAR(AggdMomentRatio(1.0), 0.5, 1e-14);
}

TEST(AggdTest, GaussianAndLaplacianShapes) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 3.0);
  std::vector<double> g(200000);
  for (double& v : g) v = gauss(rng);
  const AggdParams pg = FitAggd(g);
  EXPECT_GE(pg.alpha, 1.9);
  EXPECT_LE(pg.alpha, 2.1);
  EXPECT_NEAR(pg.left_sigma, 3.0, 0.05);
  EXPECT_NEAR(pg.right_sigma, 3.0, 0.05);
  EXPECT_NEAR(pg.mean_offset, 0.0, 0.05);

  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> l(200000);
  for (double& v : l) v = sign(rng) ? expo(rng) : -expo(rng);
  const AggdParams pl = FitAggd(l);
  EXPECT_GE(pl.alpha, 0.9);
  EXPECT_LE(pl.alpha, 1.1);
}

TEST(AggdTest, MirroredSamplesSwapSides) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> s(5000), mirrored(5000);
  for (int i = 0; i < 5000; ++i) {
    const double v = gauss(rng);
    s[i] = v > 0 ? 2.5 * v : v;
    mirrored[i] = -s[i];
  }
  const AggdParams a = FitAggd(s);
  const AggdParams b = FitAggd(mirrored);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_DOUBLE_EQ(a.left_sigma, b.right_sigma);
  EXPECT_DOUBLE_EQ(a.right_sigma, b.left_sigma);
  EXPECT_NEAR(a.mean_offset, -b.mean_offset, 1e-12);
  EXPECT_GT(a.mean_offset, 0.0);
}

TEST(AggdTest, DegenerateInputs) {
  EXPECT_THROW(FitAggd(std::vector<double>(50, 1.0)), Error);
  try {
    FitAggd(std::vector<double>(500, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
  EXPECT_THROW(FitAggd(std::vector<double>(500, 2.0)), Error);
}

TEST(FeaturesTest, TilingCountWithoutSelection) {
  const YPlane y = testing::DeadLeaves(200, 300, 8);
  const FeatureMatrix f =
      ExtractFeatures(y, {.patch_size = 96,
                          .sharpness_fraction = kNoSharpnessSelection});
  // floor(200/96) x floor(300/96) = 2 x 3.
  ASSERT_EQ(f.size(), 6);
  EXPECT_EQ(f.rows.cols(), kFeatureDim);
  EXPECT_EQ(f.patch_coords[0], (PatchCoord{0, 0}));
  EXPECT_EQ(f.patch_coords[5], (PatchCoord{96, 192}));
  EXPECT_TRUE(f.rows.allFinite());
}

TEST(FeaturesTest, SharpnessSelectionDropsFlatPatches) {
  YPlane y = testing::DeadLeaves(96, 192, 12);
  y.rightCols(96) = testing::AddGaussianNoise(
      YPlane::Constant(96, 96, 120.0), 0.5, 1);
  const FeatureMatrix all = ExtractFeatures(y, {96, 0.0});
  const FeatureMatrix sharp = ExtractFeatures(y, {96, 0.75});
  EXPECT_EQ(all.size(), 2);
  ASSERT_EQ(sharp.size(), 1);
  EXPECT_EQ(sharp.patch_coords[0], (PatchCoord{0, 0}));
  EXPECT_TRUE(sharp.rows.row(0).isApprox(all.rows.row(0)));
}

TEST(FeaturesTest, FlatImageIsRejected) {
  const YPlane flat = YPlane::Constant(96, 96, 80.0);
  EXPECT_THROW(ExtractFeatures(flat, {96, 0.75}), Error);
  EXPECT_THROW(ExtractFeatures(flat, {96, 0.0}), Error);
  EXPECT_THROW(ExtractFeatures(testing::DeadLeaves(50, 200, 1), {96, 0.0}),
               Error);
  EXPECT_THROW(ExtractFeatures(testing::DeadLeaves(96, 96, 1), {95, 0.0}),
               Error);
}

TEST(FeaturesTest, BlockFeatureLayout) {
  const YPlane mscn = ComputeMscn(testing::DeadLeaves(48, 48, 21));
  const auto f = BlockFeatures(mscn);
  const AggdParams base = FitAggd(
      std::span<const double>(mscn.data(), static_cast<std::size_t>(mscn.size())));
  EXPECT_EQ(f(0), base.alpha);
  EXPECT_NEAR(f(1),
              (base.left_sigma * base.left_sigma +
               base.right_sigma * base.right_sigma) / 2,
              1e-12);
  // Horizontal neighbor products, circularly wrapped.
  YPlane product(48, 48);
  for (int r = 0; r < 48; ++r)
    for (int c = 0; c < 48; ++c) product(r, c) = mscn(r, c) * mscn(r, (c + 47) % 48);
  const AggdParams h = FitAggd(std::span<const double>(
      product.data(), static_cast<std::size_t>(product.size())));
  EXPECT_EQ(f(2), h.alpha);
  EXPECT_NEAR(f(3), h.mean_offset, 1e-12);
  EXPECT_NEAR(f(4), h.left_sigma * h.left_sigma, 1e-12);
  EXPECT_NEAR(f(5), h.right_sigma * h.right_sigma, 1e-12);
}

TEST(MvgTest, FitUsesUnbiasedCovariance) {
  Eigen::MatrixXd rows(3, 2);
  rows << 1, 2, 3, 6, 5, 4;
  const MvgModel m = FitMvg(rows);
  EXPECT_NEAR(m.mean(0), 3.0, 1e-15);
  EXPECT_NEAR(m.mean(1), 4.0, 1e-15);
  EXPECT_NEAR(m.covariance(0, 0), 4.0, 1e-12);
  EXPECT_NEAR(m.covariance(1, 1), 4.0, 1e-12);
  EXPECT_NEAR(m.covariance(0, 1), 2.0, 1e-12);
  Eigen::MatrixXd one(1, 2);
  one << 7, 8;
  EXPECT_TRUE(FitMvg(one).covariance.isZero());
}

TEST(MvgTest, ConcatenatedCorpusMeanIsPatchWeighted) {
  const std::vector<YPlane> corpus = {testing::DeadLeaves(480, 384, 31),
                                      testing::DeadLeaves(384, 480, 32)};
  TrainOptions opts;
  opts.min_images = 2;
  opts.features.sharpness_fraction = 0.0;
  const MvgModel model = FitPristineModel(corpus, opts);
  const FeatureMatrix a = ExtractFeatures(corpus[0], opts.features);
  const FeatureMatrix b = ExtractFeatures(corpus[1], opts.features);
  const double n = static_cast<double>(a.size() + b.size());
  const Eigen::VectorXd want =
      (a.rows.colwise().sum() + b.rows.colwise().sum()).transpose() / n;
  EXPECT_LT((model.mean - want).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(model.patch_size, 96);
  EXPECT_EQ(model.covariance.rows(), kFeatureDim);
  EXPECT_FALSE(model.corpus_fingerprint.empty());
}

TEST(MvgTest, TrainingGuards) {
  const std::vector<YPlane> one = {testing::DeadLeaves(192, 192, 1)};
  EXPECT_THROW(FitPristineModel(one), Error);  // fewer than 20 images
  TrainOptions opts;
  opts.min_images = 1;
  try {
    FitPristineModel(one, opts);  // 4 patches cannot support 36 dimensions
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
}

TEST(DistanceTest, UnitOffsetUnderIdentityCovariance) {
  MvgModel a, b;
  a.mean = Eigen::VectorXd::Zero(kFeatureDim);
  a.covariance = Eigen::MatrixXd::Identity(kFeatureDim, kFeatureDim);
  b = a;
  b.mean(5) = 1.0;
  EXPECT_NEAR(MvgDistance(a, b), 1.0, 1e-12);
  EXPECT_NEAR(MvgDistance(b, a), 1.0, 1e-12);
  b.mean(5) = 0.0;
  EXPECT_EQ(MvgDistance(a, b), 0.0);
  b.mean = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(MvgDistance(a, b), Error);
}

TEST(DistanceTest, PooledCovarianceAndPseudoInverse) {
  MvgModel a, b;
  a.mean = Eigen::Vector2d(0, 0);
  b.mean = Eigen::Vector2d(3, 0);
  a.covariance = Eigen::Matrix2d{{2, 0}, {0, 0}};
  b.covariance = Eigen::Matrix2d{{4, 0}, {0, 0}};
  // Pooled variance along x is 3; the null y direction is ignored.
  EXPECT_NEAR(MvgDistance(a, b), 3.0 / std::sqrt(3.0), 1e-12);
}

TEST(PseudoInverseTest, MoorePenroseConditions) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Eigen::MatrixXd basis(6, 3);
  for (Eigen::Index i = 0; i < basis.size(); ++i) basis(i) = g(rng);
  const Eigen::MatrixXd a = basis * basis.transpose();  // rank 3
  const Eigen::MatrixXd p = SymmetricPseudoInverse(a);
  EXPECT_LT((a * p * a - a).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((p * a * p - p).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(((a * p).transpose() - a * p).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(NiqeScoreTest, ModelFitOnTheImageScoresZero) {
  const YPlane y = testing::DeadLeaves(96 * 7, 96 * 6, 77);
  TrainOptions opts;
  opts.min_images = 1;
  opts.features.sharpness_fraction = kNoSharpnessSelection;
  const std::vector<YPlane> corpus = {y};
  const MvgModel model = FitPristineModel(corpus, opts);
  EXPECT_NEAR(NiqeScore(y, model), 0.0, 1e-8);
}

TEST(NiqeScoreTest, BlurRaisesScore) {
  std::vector<YPlane> corpus;
  for (int i = 0; i < 4; ++i) corpus.push_back(testing::DeadLeaves(384, 384, 100 + i));
  TrainOptions opts;
  opts.min_images = 4;
  const MvgModel model = FitPristineModel(corpus, opts);
  const YPlane test = testing::DeadLeaves(288, 288, 999);
  const double sharp = NiqeScore(test, model);
  const double blurred = NiqeScore(GaussianBlur(test, 2.0), model);
  EXPECT_GT(blurred, sharp);
  EXPECT_TRUE(std::isfinite(sharp));
}

TEST(ModelIoTest, RoundTripIsBitExact) {
  MvgModel m;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  m.mean = Eigen::VectorXd(kFeatureDim);
  m.covariance = Eigen::MatrixXd(kFeatureDim, kFeatureDim);
  for (Eigen::Index i = 0; i < m.mean.size(); ++i) m.mean(i) = g(rng) / 3.0;
  for (Eigen::Index i = 0; i < m.covariance.size(); ++i)
    m.covariance(i) = g(rng) * 1e-7;
  m.corpus_fingerprint = "abc123";
  m.patch_size = 64;
  m.sharpness_fraction = 0.5;
  const MvgModel back = DeserializeModel(SerializeModel(m));
  EXPECT_TRUE((back.mean.array() == m.mean.array()).all());
  EXPECT_TRUE((back.covariance.array() == m.covariance.array()).all());
  EXPECT_EQ(back.corpus_fingerprint, "abc123");
  EXPECT_EQ(back.patch_size, 64);
  EXPECT_EQ(back.sharpness_fraction, 0.5);
  EXPECT_EQ(SerializeModel(back), SerializeModel(m));

  testing::TempDir dir("model");
  SaveModel(m, dir / "m.json");
  EXPECT_TRUE((LoadModel(dir / "m.json").mean.array() == m.mean.array()).all());
}

TEST(ModelIoTest, RejectsMalformedFiles) {
  for (const char* text :
       {"not json", "{}", R"({"format":"other","version":1})",
        R"({"format":"pdbench-niqe-mvg","version":1,"feature_dim":2,)"
        R"("patch_size":96,"sharpness_fraction":0.75,"corpus_fingerprint":"",)"
        R"("mean":[1,2],"covariance":[1,0,0]})"}) {
    try {
      DeserializeModel(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << text;
    }
  }
  testing::TempDir dir("model_missing");
  EXPECT_THROW(LoadModel(dir / "absent.json"), Error);
}

}  // namespace
}  // namespace pdbench::niqe
