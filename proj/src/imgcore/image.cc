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
#include <string>

#include "pdbench/image.h"

namespace pdbench {

RgbImage::RgbImage(int width, int height)
    : RgbImage(width, height,
               std::vector<std::uint8_t>(
                   static_cast<std::size_t>(std::max(width, 0)) *
                   std::max(height, 0) * 3)) {}

RgbImage::RgbImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height * 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "pixel buffer does not match " + std::to_string(width) + "x" +
                    std::to_string(height) + "x3");
  }
}

Plane<double> RgbImage::channel(int c) const {
  Plane<double> out(height_, width_);
  for (int r = 0; r < height_; ++r) {
    for (int col = 0; col < width_; ++col) out(r, col) = at(r, col, c);
  }
  return out;
}

namespace {

std::uint8_t Quantize(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

RgbImage RgbFromPlanes(const Plane<double>& r, const Plane<double>& g,
                       const Plane<double>& b) {
  if (r.rows() != g.rows() || r.rows() != b.rows() || r.cols() != g.cols() ||
      r.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "channel planes differ in size");
  }
  RgbImage out(static_cast<int>(r.cols()), static_cast<int>(r.rows()));
  for (Eigen::Index row = 0; row < r.rows(); ++row) {
    for (Eigen::Index col = 0; col < r.cols(); ++col) {
      out.at(row, col, 0) = Quantize(r(row, col));
      out.at(row, col, 1) = Quantize(g(row, col));
      out.at(row, col, 2) = Quantize(b(row, col));
    }
  }
  return out;
}

RgbImage RgbFromGray(const Plane<double>& gray) {
  return RgbFromPlanes(gray, gray, gray);
}

YPlane RgbToY(const RgbImage& image, LumaRange range) {
  YPlane y(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      y(r, c) = LumaFromRgb<double>(image.at(r, c, 0), image.at(r, c, 1),
                                    image.at(r, c, 2), range);
    }
  }
  return y;
}

}  // namespace pdbench
