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
#include <string>

#include "pdbench/image.h"

namespace pdbench {

YPlane SeparableFilter(const YPlane& plane, std::span<const double> kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  const int rows = static_cast<int>(plane.rows());
  const int cols = static_cast<int>(plane.cols());
  YPlane horizontal(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * plane(r, ReflectIndex(c + k, cols));
      }
      horizontal(r, c) = acc;
    }
  }
  YPlane out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * horizontal(ReflectIndex(r + k, rows), c);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

std::vector<double> GaussianKernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0 || !(sigma > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "Gaussian kernel needs an odd size and positive sigma");
  }
  std::vector<double> kernel(size);
  const int radius = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double x = i - radius;
    kernel[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    sum += kernel[i];
  }
  for (double& w : kernel) w /= sum;
  return kernel;
}

YPlane GaussianBlur(const YPlane& plane, double sigma) {
  if (sigma <= 0.0) return plane;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  return SeparableFilter(plane, GaussianKernel(2 * radius + 1, sigma));
}

double CubicKernel(double x) {
  const double a = -0.5;
  const double ax = std::abs(x);
  if (ax <= 1.0) return ((a + 2.0) * ax - (a + 3.0)) * ax * ax + 1.0;
  if (ax < 2.0) return ((a * ax - 5.0 * a) * ax + 8.0 * a) * ax - 4.0 * a;
  return 0.0;
}

std::vector<std::vector<ResampleTap>> DownsampleTaps(int in_length,
                                                     int factor) {
  const double scale = 1.0 / factor;
  const double support = 2.0 * factor;
  const int out_length = in_length / factor;
  std::vector<std::vector<ResampleTap>> taps(out_length);
  for (int u = 0; u < out_length; ++u) {
    // Output sample u covers source pixels [u*factor, (u+1)*factor).
    const double center = (u + 0.5) * factor - 0.5;
    const int first = static_cast<int>(std::floor(center - support));
    const int last = static_cast<int>(std::ceil(center + support));
    double sum = 0.0;
    for (int j = first; j <= last; ++j) {
      const double w = scale * CubicKernel(scale * (center - j));
      if (w == 0.0) continue;
      taps[u].push_back({ReflectIndex(j, in_length), w});
      sum += w;
    }
    for (auto& tap : taps[u]) tap.weight /= sum;
  }
  return taps;
}

YPlane BicubicDownsample(const YPlane& plane, int factor) {
  if (factor < 1) {
    throw Error(ErrorKind::kInvalidArgument, "downsample factor must be >= 1");
  }
  const int rows = static_cast<int>(plane.rows());
  const int cols = static_cast<int>(plane.cols());
  if (rows % factor != 0 || cols % factor != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                std::to_string(cols) + "x" + std::to_string(rows) +
                    " is not divisible by factor " + std::to_string(factor));
  }
  if (factor == 1) return plane;
  const auto col_taps = DownsampleTaps(cols, factor);
  const auto row_taps = DownsampleTaps(rows, factor);
  YPlane horizontal(rows, cols / factor);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols / factor; ++c) {
      double acc = 0.0;
      for (const auto& tap : col_taps[c]) acc += tap.weight * plane(r, tap.source);
      horizontal(r, c) = acc;
    }
  }
  YPlane out(rows / factor, cols / factor);
  for (int r = 0; r < rows / factor; ++r) {
    for (int c = 0; c < cols / factor; ++c) {
      double acc = 0.0;
      for (const auto& tap : row_taps[r]) {
        acc += tap.weight * horizontal(tap.source, c);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

RgbImage BicubicDownsample(const RgbImage& image, int factor) {
  return RgbFromPlanes(BicubicDownsample(image.channel(0), factor),
                       BicubicDownsample(image.channel(1), factor),
                       BicubicDownsample(image.channel(2), factor));
}

}  // namespace pdbench
