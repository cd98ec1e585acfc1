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

#ifndef PDBENCH_NIQE_H_
#define PDBENCH_NIQE_H_

// NIQE: natural-scene-statistics features of local luma, a multivariate
// Gaussian fitted to pristine images, and the distance of a test image's
// fit from it.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdbench/image.h"

namespace pdbench::niqe {

inline constexpr int kFeatureDim = 36;
inline constexpr int kFeaturesPerScale = 18;

// Mean-subtracted contrast-normalized coefficients:
// (y - mu) / (sigma + 1) with 7x7 Gaussian (sigma 7/6) local moments.
YPlane ComputeMscn(const YPlane& y);

// Local standard deviation used by ComputeMscn; also the patch sharpness.
YPlane LocalDeviation(const YPlane& y);

// Asymmetric generalized Gaussian parameters.
struct AggdParams {
  double alpha = 0.0;        // shape
  double left_sigma = 0.0;   // from the negative samples
  double right_sigma = 0.0;  // from the positive samples
  double mean_offset = 0.0;  // eta
};

inline constexpr double kAlphaMin = 0.2;
inline constexpr double kAlphaMax = 10.0;
inline constexpr double kAlphaStep = 0.001;
inline constexpr int kMinAggdSamples = 100;

// Moment-matching fit; alpha chosen on the grid [0.2, 10] step 0.001.
// Throws kDegenerateInput for fewer than 100 samples, all zeros, or
// samples with no negative or no positive values.
AggdParams FitAggd(std::span<const double> samples);

// Ratio Gamma(2/a)^2 / (Gamma(1/a) Gamma(3/a)) matched by FitAggd.
double AggdMomentRatio(double alpha);

struct PatchCoord {
  int row = 0;  // top-left, in scale-1 pixels
  int col = 0;
  bool operator==(const PatchCoord&) const = default;
};

// One 36-dim feature row per retained patch.
struct FeatureMatrix {
  Eigen::MatrixXd rows;
  std::vector<PatchCoord> patch_coords;

  Eigen::Index size() const { return rows.rows(); }
};

inline constexpr double kNoSharpnessSelection = 0.0;

struct FeatureOptions {
  int patch_size = 96;
  // Keep patches whose mean local deviation is at least this fraction of
  // the image maximum. kNoSharpnessSelection keeps every patch.
  double sharpness_fraction = 0.75;
};

// Tiles the image (cropped to whole patches) at full and half resolution.
// Patches whose statistics cannot be fitted are dropped; throws
// kDegenerateInput if nothing survives.
FeatureMatrix ExtractFeatures(const YPlane& y, const FeatureOptions& options);

// The 18 per-scale features of one MSCN block.
Eigen::Matrix<double, kFeaturesPerScale, 1> BlockFeatures(
    const YPlane& mscn_block);

// Multivariate Gaussian over feature vectors.
struct MvgModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  // Provenance of a trained pristine model; empty for ad-hoc fits.
  std::string corpus_fingerprint;
  int patch_size = 96;
  double sharpness_fraction = 0.75;

  int feature_dim() const { return static_cast<int>(mean.size()); }
};

// Sample mean and (n - 1)-normalized covariance; a single row gives a
// zero covariance.
MvgModel FitMvg(const Eigen::MatrixXd& rows);

struct TrainOptions {
  FeatureOptions features;
  int min_images = 20;
};

// Pristine model over the concatenated patch features of every corpus
// image, in corpus order.
MvgModel FitPristineModel(std::span<const YPlane> corpus,
                          const TrainOptions& options = {});

// Moore-Penrose inverse of a symmetric matrix, discarding eigenvalues below
// `relative_cutoff` times the largest one.
Eigen::MatrixXd SymmetricPseudoInverse(const Eigen::MatrixXd& m,
                                       double relative_cutoff = 1e-10);

// sqrt((mu1 - mu2)^T ((S1 + S2) / 2)^+ (mu1 - mu2)).
double MvgDistance(const MvgModel& pristine, const MvgModel& test);

// Test features use every patch (no sharpness selection).
double NiqeScore(const YPlane& y, const MvgModel& pristine);

// JSON container; doubles round-trip exactly.
std::string SerializeModel(const MvgModel& model);
MvgModel DeserializeModel(const std::string& text);
void SaveModel(const MvgModel& model, const std::filesystem::path& path);
MvgModel LoadModel(const std::filesystem::path& path);

}  // namespace pdbench::niqe

#endif  // PDBENCH_NIQE_H_
