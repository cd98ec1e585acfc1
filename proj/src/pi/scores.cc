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
#include <set>

#include "pdbench/csv.h"
#include "pdbench/error.h"
#include "pdbench/scores.h"

namespace pdbench {

void ScoreSet::Add(MetricRecord record) {
  if (!std::isfinite(record.value)) {
    throw Error(ErrorKind::kParse, "non-finite value for " + record.method +
                                       "/" + record.image_id + "/" +
                                       record.metric);
  }
  Key key{record.method, record.image_id, record.metric};
  if (!values_.emplace(std::move(key), record.value).second) {
    throw Error(ErrorKind::kDuplicate,
                "duplicate score for image_id '" + record.image_id +
                    "' (method " + record.method + ", metric " +
                    record.metric + ")");
  }
}

void ScoreSet::Merge(const ScoreSet& other) {
  for (auto& record : other.records()) Add(record);
  if (roster_.empty()) roster_ = other.roster_;
}

std::optional<double> ScoreSet::Find(const std::string& method,
                                     const std::string& image_id,
                                     const std::string& metric) const {
  auto it = values_.find(Key{method, image_id, metric});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<MetricRecord> ScoreSet::records() const {
  std::vector<MetricRecord> out;
  out.reserve(values_.size());
  for (const auto& [key, value] : values_) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
  }
  return out;
}

std::vector<std::pair<std::string, double>> ScoreSet::Column(
    const std::string& method, const std::string& metric) const {
  std::vector<std::pair<std::string, double>> out;
  if (roster_.empty()) {
    for (const auto& [key, value] : values_) {
      if (std::get<0>(key) == method && std::get<2>(key) == metric) {
        out.emplace_back(std::get<1>(key), value);
      }
    }
    return out;
  }
  std::string missing;
  for (const auto& image : roster_) {
    if (auto v = Find(method, image, metric)) {
      out.emplace_back(image, *v);
    } else {
      missing += (missing.empty() ? "" : ", ") + image;
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissingData, "method " + method + " lacks " +
                                             metric + " scores for: " +
                                             missing);
  }
  return out;
}

ScoreSet ParseScoreCsv(std::string_view text, const std::string& source_name,
                       const std::string& method, const std::string& metric,
                       std::span<const std::string> roster) {
  const CsvTable table = ParseCsv(text, source_name);
  if (table.header != std::vector<std::string>{"image_id", "value"}) {
    throw Error(ErrorKind::kParse,
                source_name + ": expected header 'image_id,value'");
  }
  ScoreSet set(std::vector<std::string>(roster.begin(), roster.end()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where =
        source_name + ":" + std::to_string(table.line_numbers[i]);
    if (row[0].empty()) {
      throw Error(ErrorKind::kParse, where + ": empty image_id");
    }
    const auto value = ParseFiniteDouble(row[1]);
    if (!value) {
      throw Error(ErrorKind::kParse, where + ": unparsable or non-finite value '" +
                                         row[1] + "' for image_id '" + row[0] +
                                         "'");
    }
    if (set.Find(method, row[0], metric)) {
      throw Error(ErrorKind::kDuplicate,
                  where + ": duplicate image_id '" + row[0] + "'");
    }
    set.Add({method, row[0], metric, *value});
  }
  if (!roster.empty()) {
    std::string missing;
    for (const auto& image : roster) {
      if (!set.Find(method, image, metric)) {
        missing += (missing.empty() ? "" : ", ") + image;
      }
    }
    if (!missing.empty()) {
      throw Error(ErrorKind::kMissingData,
                  source_name + ": missing roster images: " + missing);
    }
  }
  return set;
}

ScoreSet LoadScores(const std::filesystem::path& path,
                    const std::string& method, const std::string& metric,
                    std::span<const std::string> roster) {
  return ParseScoreCsv(ReadTextFile(path), path.string(), method, metric,
                       roster);
}

std::string FormatScoreCsv(const ScoreSet& set, const std::string& method,
                           const std::string& metric) {
  std::string out = "image_id,value\n";
  for (const auto& [image, value] : set.Column(method, metric)) {
    out += image + "," + FormatDouble(value) + "\n";
  }
  return out;
}

DatasetPi ComputeDatasetPi(const ScoreSet& set, const std::string& method) {
  std::vector<std::string> images = set.roster();
  if (images.empty()) {
    std::set<std::string> seen;
    for (const auto& r : set.records()) {
      if (r.method == method && (r.metric == "ma" || r.metric == "niqe")) {
        seen.insert(r.image_id);
      }
    }
    images.assign(seen.begin(), seen.end());
  }
  if (images.empty()) {
    throw Error(ErrorKind::kMissingData, "no Ma/NIQE scores for " + method);
  }
  std::string missing;
  double pi_sum = 0.0, ma_sum = 0.0, niqe_sum = 0.0;
  for (const auto& image : images) {
    const auto ma = set.Find(method, image, "ma");
    const auto niqe = set.Find(method, image, "niqe");
    if (!ma || !niqe) {
      missing += (missing.empty() ? "" : ", ") + image +
                 (!ma && !niqe ? " (ma, niqe)" : !ma ? " (ma)" : " (niqe)");
      continue;
    }
    pi_sum += PerceptualIndex(*ma, *niqe);
    ma_sum += *ma;
    niqe_sum += *niqe;
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissingData,
                "method " + method + " is missing scores for: " + missing);
  }
  const double n = static_cast<double>(images.size());
  DatasetPi result;
  result.pi = pi_sum / n;
  result.mean_ma = ma_sum / n;
  result.mean_niqe = niqe_sum / n;
  result.pi_from_means = PerceptualIndex(result.mean_ma, result.mean_niqe);
  result.images = images.size();
  // Both formulations are the same linear functional.
  const double scale = 1.0 + std::abs(result.pi) + std::abs(result.mean_ma) +
                       std::abs(result.mean_niqe);
  if (std::abs(result.pi - result.pi_from_means) > 1e-9 * scale) {
    throw Error(ErrorKind::kInvalidArgument,
                "perceptual index aggregation disagrees for " + method);
  }
  return result;
}

}  // namespace pdbench
