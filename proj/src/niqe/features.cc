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

#include <algorithm>
#include <cmath>
#include <vector>

#include "pdbench/niqe.h"

namespace pdbench::niqe {
namespace {

constexpr int kMscnWindow = 7;
constexpr double kMscnSigma = 7.0 / 6.0;

struct LocalStats {
  YPlane mean;
  YPlane deviation;
};

LocalStats ComputeLocalStats(const YPlane& y) {
  if (y.rows() < kMscnWindow || y.cols() < kMscnWindow) {
    throw Error(ErrorKind::kInvalidArgument,
                "MSCN needs at least 7x7 pixels, got " +
                    std::to_string(y.cols()) + "x" + std::to_string(y.rows()));
  }
  static const std::vector<double> kernel =
      GaussianKernel(kMscnWindow, kMscnSigma);
  LocalStats stats;
  stats.mean = SeparableFilter(y, kernel);
  stats.deviation =
      (SeparableFilter(y.square(), kernel) - stats.mean.square()).abs().sqrt();
  return stats;
}

// Circular shift within the block, matching the reference construction:
// out(i, j) = in(i - dr, j - dc).
YPlane CircularShift(const YPlane& in, int dr, int dc) {
  const int rows = static_cast<int>(in.rows());
  const int cols = static_cast<int>(in.cols());
  YPlane out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const int src_r = ((i - dr) % rows + rows) % rows;
    for (int j = 0; j < cols; ++j) {
      out(i, j) = in(src_r, ((j - dc) % cols + cols) % cols);
    }
  }
  return out;
}

std::span<const double> Samples(const YPlane& plane) {
  return {plane.data(), static_cast<std::size_t>(plane.size())};
}

}  // namespace

YPlane ComputeMscn(const YPlane& y) {
  const LocalStats stats = ComputeLocalStats(y);
  return (y - stats.mean) / (stats.deviation + 1.0);
}

YPlane LocalDeviation(const YPlane& y) { return ComputeLocalStats(y).deviation; }

Eigen::Matrix<double, kFeaturesPerScale, 1> BlockFeatures(
    const YPlane& mscn_block) {
  Eigen::Matrix<double, kFeaturesPerScale, 1> f;
  const AggdParams base = FitAggd(Samples(mscn_block));
  f(0) = base.alpha;
  f(1) = (base.left_sigma * base.left_sigma +
          base.right_sigma * base.right_sigma) /
         2.0;
  // Horizontal, vertical, main diagonal, secondary diagonal neighbors.
  constexpr int kShifts[4][2] = {{0, 1}, {1, 0}, {1, 1}, {-1, 1}};
  for (int s = 0; s < 4; ++s) {
    const YPlane product =
        mscn_block * CircularShift(mscn_block, kShifts[s][0], kShifts[s][1]);
    const AggdParams p = FitAggd(Samples(product));
    f(2 + 4 * s) = p.alpha;
    f(3 + 4 * s) = p.mean_offset;
    f(4 + 4 * s) = p.left_sigma * p.left_sigma;
    f(5 + 4 * s) = p.right_sigma * p.right_sigma;
  }
  return f;
}

FeatureMatrix ExtractFeatures(const YPlane& y, const FeatureOptions& options) {
  const int patch = options.patch_size;
  if (patch < 20 || patch % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "patch size must be even and at least 20");
  }
  const int tile_rows = static_cast<int>(y.rows()) / patch;
  const int tile_cols = static_cast<int>(y.cols()) / patch;
  if (tile_rows == 0 || tile_cols == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "image " + std::to_string(y.cols()) + "x" +
                    std::to_string(y.rows()) + " is smaller than one " +
                    std::to_string(patch) + "-pixel patch");
  }
  const YPlane full = y.topLeftCorner(tile_rows * patch, tile_cols * patch);
  const LocalStats stats = ComputeLocalStats(full);
  const YPlane mscn_full = (full - stats.mean) / (stats.deviation + 1.0);
  const YPlane mscn_half = ComputeMscn(BicubicDownsample(full, 2));
  const int half = patch / 2;

  Eigen::MatrixXd sharpness(tile_rows, tile_cols);
  for (int tr = 0; tr < tile_rows; ++tr) {
    for (int tc = 0; tc < tile_cols; ++tc) {
      sharpness(tr, tc) =
          stats.deviation.block(tr * patch, tc * patch, patch, patch).mean();
    }
  }
  const bool select = options.sharpness_fraction > 0.0;
  const double max_sharpness = sharpness.maxCoeff();
  if (select && !(max_sharpness > 0.0)) {
    throw Error(ErrorKind::kDegenerateInput,
                "no sharp patches: image has no local contrast");
  }
  const double threshold = options.sharpness_fraction * max_sharpness;

  std::vector<Eigen::Matrix<double, kFeatureDim, 1>> rows;
  FeatureMatrix out;
  for (int tr = 0; tr < tile_rows; ++tr) {
    for (int tc = 0; tc < tile_cols; ++tc) {
      if (select && sharpness(tr, tc) < threshold) continue;
      Eigen::Matrix<double, kFeatureDim, 1> row;
      try {
        row.head<kFeaturesPerScale>() = BlockFeatures(
            mscn_full.block(tr * patch, tc * patch, patch, patch));
        row.tail<kFeaturesPerScale>() =
            BlockFeatures(mscn_half.block(tr * half, tc * half, half, half));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegenerateInput) throw;
        continue;
      }
      rows.push_back(row);
      out.patch_coords.push_back({tr * patch, tc * patch});
    }
  }
  if (rows.empty()) {
    throw Error(ErrorKind::kDegenerateInput,
                "no patch survived feature extraction");
  }
  out.rows.resize(static_cast<Eigen::Index>(rows.size()), kFeatureDim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.rows.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return out;
}

}  // namespace pdbench::niqe
