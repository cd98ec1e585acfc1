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

// Helpers shared by the unit and acceptance tests: a seeded synthetic
// natural-image generator, scratch directories, and published leaderboard
// rows.

#ifndef PDBENCH_TESTS_SUPPORT_SYNTHETIC_H_
#define PDBENCH_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pdbench/image.h"
#include "pdbench/leaderboard.h"

namespace pdbench::testing {

// Dead-leaves image: occluding disks with power-law radii and mild grain.
// Values are integral and lie in [0, 255].
YPlane DeadLeaves(int rows, int cols, std::uint64_t seed);
RgbImage DeadLeavesRgb(int rows, int cols, std::uint64_t seed);

YPlane AddGaussianNoise(const YPlane& plane, double sigma, std::uint64_t seed);
RgbImage AddGaussianNoise(const RgbImage& image, double sigma,
                          std::uint64_t seed);
RgbImage Blur(const RgbImage& image, double sigma);

class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

struct PublishedRow {
  int region = 0;
  int rank = 0;
  bool tied = false;
  SubmissionSummary submission;
};

// Full test-phase table, in published order within each region.
const std::vector<PublishedRow>& PublishedLeaderboard();

}  // namespace pdbench::testing

#endif  // PDBENCH_TESTS_SUPPORT_SYNTHETIC_H_
