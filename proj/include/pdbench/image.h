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

#ifndef PDBENCH_IMAGE_H_
#define PDBENCH_IMAGE_H_

// Image containers and the preprocessing every metric depends on: luma
// conversion, border cropping, filtering and bicubic resampling.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdbench/error.h"

namespace pdbench {

// Single-channel plane, row-major so (row, col) matches image scan order.
template <typename Scalar>
using Plane =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Luma in gray-levels [0, 255], never quantized.
using YPlane = Plane<double>;

// 8-bit interleaved RGB.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height);
  RgbImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t at(int row, int col, int channel) const {
    return pixels_[(static_cast<std::size_t>(row) * width_ + col) * 3 +
                   channel];
  }
  std::uint8_t& at(int row, int col, int channel) {
    return pixels_[(static_cast<std::size_t>(row) * width_ + col) * 3 +
                   channel];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }

  // Channel as a real-valued plane.
  Plane<double> channel(int c) const;

  bool operator==(const RgbImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Rounds to nearest and clamps to [0, 255]. Quantization only happens here.
RgbImage RgbFromPlanes(const Plane<double>& r, const Plane<double>& g,
                       const Plane<double>& b);
RgbImage RgbFromGray(const Plane<double>& gray);

// PNG I/O. 8-bit RGB, RGBA (alpha dropped) and grayscale inputs are
// accepted; grayscale is replicated into three channels. A missing file
// raises ErrorKind::kMissingFile, anything undecodable ErrorKind::kDecode.
RgbImage LoadImage(const std::filesystem::path& path);
RgbImage DecodePng(std::span<const std::uint8_t> bytes);
void SavePng(const RgbImage& image, const std::filesystem::path& path);
std::vector<std::uint8_t> EncodePng(const RgbImage& image);

enum class LumaRange {
  kStudio,  // ITU-R BT.601, Y in [16, 235]
  kFull,    // Y = 0.299 R + 0.587 G + 0.114 B in [0, 255]
};

template <typename Scalar>
Scalar LumaFromRgb(Scalar r, Scalar g, Scalar b,
                   LumaRange range = LumaRange::kStudio) {
  if (range == LumaRange::kFull) {
    return Scalar(0.299) * r + Scalar(0.587) * g + Scalar(0.114) * b;
  }
  return (Scalar(65.481) * r + Scalar(128.553) * g + Scalar(24.966) * b) /
             Scalar(255) +
         Scalar(16);
}

YPlane RgbToY(const RgbImage& image, LumaRange range = LumaRange::kStudio);

// Drops `border` pixels on every side.
template <typename Derived>
Plane<typename Derived::Scalar> CropBorder(
    const Eigen::ArrayBase<Derived>& plane, int border) {
  if (border < 0 || plane.rows() <= 2 * border || plane.cols() <= 2 * border) {
    throw Error(ErrorKind::kInvalidArgument,
                "image " + std::to_string(plane.cols()) + "x" +
                    std::to_string(plane.rows()) +
                    " too small for a border of " + std::to_string(border));
  }
  return plane.block(border, border, plane.rows() - 2 * border,
                     plane.cols() - 2 * border);
}

// Index into [0, n) with half-sample symmetric reflection (abc|cba).
inline int ReflectIndex(int i, int n) {
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

// Correlates rows then columns with the same odd-length kernel using
// symmetric edge extension. Output has the input's size.
YPlane SeparableFilter(const YPlane& plane, std::span<const double> kernel);

// Normalized sampled Gaussian of length `size` (odd).
std::vector<double> GaussianKernel(int size, double sigma);

// Gaussian blur with a kernel spanning +-ceil(3 sigma). sigma <= 0 is the
// identity.
YPlane GaussianBlur(const YPlane& plane, double sigma);

// Bicubic kernel with a = -0.5.
double CubicKernel(double x);

// One-dimensional resampling weights for shrinking `in_length` samples by
// an integer factor: the cubic kernel stretched by the factor
// (anti-aliasing), normalized per output sample, with symmetric extension
// folded into the source indices.
struct ResampleTap {
  int source;
  double weight;
};
std::vector<std::vector<ResampleTap>> DownsampleTaps(int in_length,
                                                     int factor);

YPlane BicubicDownsample(const YPlane& plane, int factor);
RgbImage BicubicDownsample(const RgbImage& image, int factor);

}  // namespace pdbench

#endif  // PDBENCH_IMAGE_H_
