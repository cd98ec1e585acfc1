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

#ifndef PDBENCH_FR_METRICS_H_
#define PDBENCH_FR_METRICS_H_

// Full-reference distortion measures on preprocessed luma planes.

#include <limits>
#include <span>
#include <string>

#include "pdbench/image.h"

namespace pdbench {

// Ground truth and estimate after identical preprocessing.
struct ImagePair {
  YPlane ground_truth;
  YPlane estimate;

  Eigen::Index pixel_count() const { return ground_truth.size(); }
};

// Converts both images to luma and removes `border` pixels on each side.
ImagePair PreparePair(const RgbImage& ground_truth, const RgbImage& estimate,
                      int border = 4, LumaRange range = LumaRange::kStudio);

template <typename DerivedA, typename DerivedB>
double MeanSquaredError(const Eigen::ArrayBase<DerivedA>& a,
                        const Eigen::ArrayBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "plane sizes differ: " + std::to_string(a.cols()) + "x" +
                    std::to_string(a.rows()) + " vs " +
                    std::to_string(b.cols()) + "x" + std::to_string(b.rows()));
  }
  return (a.template cast<double>() - b.template cast<double>())
      .square()
      .mean();
}

inline double MseY(const ImagePair& pair) {
  return MeanSquaredError(pair.ground_truth, pair.estimate);
}

// Square root of the mean of per-image MSEs, summed in index order. This is
// deliberately not the mean of per-image RMSEs.
double DatasetRmse(std::span<const double> per_image_mse);
double DatasetRmse(std::span<const ImagePair> pairs);

inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

// 10 log10(255^2 / MSE); kPsnrIdentical when MSE is zero.
double PsnrFromMse(double mse);
inline double Psnr(const ImagePair& pair) { return PsnrFromMse(MseY(pair)); }

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

// Mean SSIM over every fully-contained window position (no padding).
double Ssim(const YPlane& a, const YPlane& b, const SsimOptions& options = {});
inline double Ssim(const ImagePair& pair) {
  return Ssim(pair.ground_truth, pair.estimate);
}

}  // namespace pdbench

#endif  // PDBENCH_FR_METRICS_H_
