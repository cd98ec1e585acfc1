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

#ifndef PDBENCH_LEADERBOARD_H_
#define PDBENCH_LEADERBOARD_H_

// Region bands on the RMSE axis, ranking within a region by perceptual
// index with marginal ties, and perception-distortion plane export.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdbench {

struct SubmissionSummary {
  std::string team;
  int region_target = 0;  // 1..3, or 0 when derived from the RMSE
  double pi = 0.0;
  double rmse = 0.0;

  bool operator==(const SubmissionSummary&) const = default;
};

struct RegionSpec {
  std::array<double, 3> thresholds = {11.5, 12.5, 16.0};
};

// Smallest region whose threshold the RMSE does not exceed; nullopt beyond
// the last one.
std::optional<int> AssignRegion(double rmse, const RegionSpec& spec = {});

struct RankOptions {
  double eps_pi = 0.01;
  double eps_rmse = 0.05;
};

struct RankedEntry {
  int rank = 0;
  bool tied = false;
  SubmissionSummary submission;
};

// Orders by PI. Neighbours within eps_pi are ordered by RMSE instead;
// if they are also within eps_rmse they form a tie group sharing one rank,
// listed by PI. Every member of a tie group is within both margins of every
// other member. Ranks skip past tie groups (1, 2, 3, 3, 5). The result does
// not depend on input order.
std::vector<RankedEntry> Rank(std::span<const SubmissionSummary> entries,
                              const RankOptions& options = {});

// Margin comparison tolerant to decimal round-off in the inputs
// (2.136 - 2.126 counts as 0.01).
bool WithinMargin(double a, double b, double eps);

std::vector<SubmissionSummary> ParseSubmissionsJson(std::string_view text);
std::string SubmissionsToJson(std::span<const SubmissionSummary> entries);

// Entries whose explicit region matches, or whose RMSE falls in the band
// when no region was given.
std::vector<SubmissionSummary> FilterRegion(
    std::span<const SubmissionSummary> entries, int region,
    const RegionSpec& spec = {});

std::string LeaderboardMarkdown(int region,
                                std::span<const RankedEntry> ranked,
                                const RegionSpec& spec = {});
// Rows of region,rank,tied,team,pi,rmse.
std::string LeaderboardCsv(int region, std::span<const RankedEntry> ranked,
                           bool with_header = true);

// One point per submission: rmse,pi,team,region.
struct PlanePoint {
  double rmse = 0.0;
  double pi = 0.0;
  std::string team;
  int region = 0;  // 0 = outside every region

  bool operator==(const PlanePoint&) const = default;
};

std::vector<PlanePoint> PlaneExport(std::span<const SubmissionSummary> entries,
                                    const RegionSpec& spec = {});
std::string PlaneCsv(std::span<const PlanePoint> points);
std::vector<PlanePoint> ParsePlaneCsv(std::string_view text);
std::string PlaneJson(std::span<const PlanePoint> points);

}  // namespace pdbench

#endif  // PDBENCH_LEADERBOARD_H_
