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
#include <map>

#include "pdbench/analysis.h"
#include "pdbench/error.h"

namespace pdbench::analysis {

std::vector<AnalysisPoint> MethodLevelTable(
    std::span<const study::RatingAggregate> mos, const ScoreSet& scores,
    const std::string& metric, MethodAggregation aggregation) {
  std::vector<AnalysisPoint> points;
  std::string missing;
  for (const auto& a : mos) {
    std::vector<std::pair<std::string, double>> column;
    try {
      column = scores.Column(a.method, metric);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kMissingData) throw;
    }
    if (column.empty()) {
      missing += (missing.empty() ? "" : ", ") + a.method;
      continue;
    }
    double sum = 0.0;
    for (const auto& [image, value] : column) sum += value;
    double value = sum / static_cast<double>(column.size());
    if (aggregation == MethodAggregation::kRootMean) value = std::sqrt(value);
    points.push_back({a.method, a.mos, value});
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissingData,
                "no " + metric + " scores for method(s): " + missing);
  }
  return points;
}

std::vector<AnalysisPoint> ImageLevelTable(
    std::span<const study::CenteredScore> centered_mos, const ScoreSet& scores,
    const std::string& metric) {
  std::map<std::string, std::pair<double, int>> image_sums;
  std::vector<double> values;
  std::string missing;
  for (const auto& c : centered_mos) {
    const auto v = scores.Find(c.method, c.image_id, metric);
    if (!v) {
      missing += (missing.empty() ? "" : ", ") + c.method + "/" + c.image_id;
      values.push_back(0.0);
      continue;
    }
    values.push_back(*v);
    auto& [sum, n] = image_sums[c.image_id];
    sum += *v;
    ++n;
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissingData,
                "no " + metric + " score for: " + missing);
  }
  std::vector<AnalysisPoint> points;
  points.reserve(centered_mos.size());
  for (std::size_t i = 0; i < centered_mos.size(); ++i) {
    const auto& c = centered_mos[i];
    const auto& [sum, n] = image_sums[c.image_id];
    points.push_back({c.method + "/" + c.image_id, c.centered,
                      values[i] - sum / n});
  }
  return points;
}

}  // namespace pdbench::analysis
