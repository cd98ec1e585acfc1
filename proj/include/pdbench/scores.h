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

#ifndef PDBENCH_SCORES_H_
#define PDBENCH_SCORES_H_

// Per-image metric records and the perceptual index built from them.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace pdbench {

struct MetricRecord {
  std::string method;
  std::string image_id;
  std::string metric;
  double value = 0.0;

  bool operator==(const MetricRecord&) const = default;
};

// Records keyed by (method, image_id, metric); keys are unique.
class ScoreSet {
 public:
  ScoreSet() = default;
  explicit ScoreSet(std::vector<std::string> roster)
      : roster_(std::move(roster)) {}

  // Throws kDuplicate if the key is already present, kParse if the value is
  // not finite.
  void Add(MetricRecord record);
  void Merge(const ScoreSet& other);

  std::optional<double> Find(const std::string& method,
                             const std::string& image_id,
                             const std::string& metric) const;

  const std::vector<std::string>& roster() const { return roster_; }
  void set_roster(std::vector<std::string> roster) {
    roster_ = std::move(roster);
  }

  std::vector<MetricRecord> records() const;
  std::size_t size() const { return values_.size(); }

  // Values of one (method, metric) in roster order, or every image the
  // method has when the roster is empty. Throws kMissingData listing the
  // roster images without a record.
  std::vector<std::pair<std::string, double>> Column(
      const std::string& method, const std::string& metric) const;

 private:
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, double> values_;
  std::vector<std::string> roster_;
};

// Score CSV with header `image_id,value`. Errors name the offending row.
// When `roster` is non-empty every roster image must be present.
ScoreSet ParseScoreCsv(std::string_view text, const std::string& source_name,
                       const std::string& method, const std::string& metric,
                       std::span<const std::string> roster = {});
ScoreSet LoadScores(const std::filesystem::path& path,
                    const std::string& method, const std::string& metric,
                    std::span<const std::string> roster = {});

// Inverse of ParseScoreCsv for one (method, metric) column.
std::string FormatScoreCsv(const ScoreSet& set, const std::string& method,
                           const std::string& metric);

// Lower is better: 0.5 * ((10 - ma) + niqe).
inline double PerceptualIndex(double ma, double niqe) {
  return 0.5 * ((10.0 - ma) + niqe);
}

struct DatasetPi {
  double pi = 0.0;         // mean of per-image PI
  double mean_ma = 0.0;
  double mean_niqe = 0.0;
  double pi_from_means = 0.0;  // PerceptualIndex(mean_ma, mean_niqe)
  std::size_t images = 0;
};

// Uses metrics named "ma" and "niqe". Throws kMissingData naming every
// roster image lacking either score.
DatasetPi ComputeDatasetPi(const ScoreSet& set, const std::string& method);

}  // namespace pdbench

#endif  // PDBENCH_SCORES_H_
