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

#include "pdbench/fr_metrics.h"

#include <cmath>
#include <vector>

namespace pdbench {

ImagePair PreparePair(const RgbImage& ground_truth, const RgbImage& estimate,
                      int border, LumaRange range) {
  if (ground_truth.width() != estimate.width() ||
      ground_truth.height() != estimate.height()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "ground truth is " + std::to_string(ground_truth.width()) +
                    "x" + std::to_string(ground_truth.height()) +
                    " but estimate is " + std::to_string(estimate.width()) +
                    "x" + std::to_string(estimate.height()));
  }
  return {CropBorder(RgbToY(ground_truth, range), border),
          CropBorder(RgbToY(estimate, range), border)};
}

double DatasetRmse(std::span<const double> per_image_mse) {
  if (per_image_mse.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "RMSE of an empty image set");
  }
  double sum = 0.0;
  for (double mse : per_image_mse) sum += mse;
  return std::sqrt(sum / static_cast<double>(per_image_mse.size()));
}

double DatasetRmse(std::span<const ImagePair> pairs) {
  std::vector<double> mse;
  mse.reserve(pairs.size());
  for (const auto& pair : pairs) mse.push_back(MseY(pair));
  return DatasetRmse(mse);
}

double PsnrFromMse(double mse) {
  if (mse <= 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

// Correlation restricted to positions where the window fits entirely.
YPlane ValidFilter(const YPlane& plane, const std::vector<double>& kernel) {
  const int size = static_cast<int>(kernel.size());
  const Eigen::Index out_rows = plane.rows() - size + 1;
  const Eigen::Index out_cols = plane.cols() - size + 1;
  YPlane horizontal(plane.rows(), out_cols);
  for (Eigen::Index r = 0; r < plane.rows(); ++r) {
    for (Eigen::Index c = 0; c < out_cols; ++c) {
      double acc = 0.0;
      for (int k = 0; k < size; ++k) acc += kernel[k] * plane(r, c + k);
      horizontal(r, c) = acc;
    }
  }
  YPlane out(out_rows, out_cols);
  for (Eigen::Index r = 0; r < out_rows; ++r) {
    for (Eigen::Index c = 0; c < out_cols; ++c) {
      double acc = 0.0;
      for (int k = 0; k < size; ++k) acc += kernel[k] * horizontal(r + k, c);
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace

double Ssim(const YPlane& a, const YPlane& b, const SsimOptions& options) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "SSIM inputs differ in size");
  }
  if (a.rows() < options.window || a.cols() < options.window) {
    throw Error(ErrorKind::kInvalidArgument,
                "SSIM needs at least " + std::to_string(options.window) + "x" +
                    std::to_string(options.window) + " pixels");
  }
  const auto kernel = GaussianKernel(options.window, options.sigma);
  const double c1 = std::pow(options.k1 * options.dynamic_range, 2);
  const double c2 = std::pow(options.k2 * options.dynamic_range, 2);

  const YPlane mu_a = ValidFilter(a, kernel);
  const YPlane mu_b = ValidFilter(b, kernel);
  const YPlane var_a = ValidFilter(a.square(), kernel) - mu_a.square();
  const YPlane var_b = ValidFilter(b.square(), kernel) - mu_b.square();
  const YPlane cov = ValidFilter(a * b, kernel) - mu_a * mu_b;

  const YPlane map = ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                     ((mu_a.square() + mu_b.square() + c1) *
                      (var_a + var_b + c2));
  return map.mean();
}

}  // namespace pdbench
