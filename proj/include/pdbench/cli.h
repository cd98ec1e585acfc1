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

#ifndef PDBENCH_CLI_H_
#define PDBENCH_CLI_H_

// Command implementations behind the `pdbench` tool. Each Run* function
// takes a fully parsed config, writes its outputs and throws pdbench::Error
// on data problems; Main maps those to exit codes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdbench/image.h"
#include "pdbench/leaderboard.h"

namespace pdbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

inline constexpr const char* kToolVersion = "0.1.0";

// Raised for bad invocations (missing paths, inconsistent flags): exit 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"tool", "version", "command", "config_hash", "seed"}; no timestamps so
// reruns are byte-identical.
std::string ProvenanceJson(const std::string& command,
                           const std::string& canonical_config,
                           std::uint64_t seed);
std::string ProvenanceCsvComment(const std::string& command,
                                 const std::string& canonical_config,
                                 std::uint64_t seed);

struct EvaluateConfig {
  std::filesystem::path hr_dir;
  std::filesystem::path sr_root;  // one subdirectory per method
  std::vector<std::string> methods;  // empty: every subdirectory
  std::filesystem::path ma_dir;      // <method>.csv, header image_id,value
  std::filesystem::path niqe_model;
  std::filesystem::path out_dir;
  bool skip_pi = false;
  int border = 4;
  LumaRange luma = LumaRange::kStudio;
  int jobs = 1;
  RegionSpec regions;
  std::uint64_t seed = 0;
};

struct MethodSummary {
  std::string method;
  std::size_t images = 0;
  double rmse = 0.0;
  double mean_ssim = 0.0;
  std::optional<double> mean_niqe;
  std::optional<double> mean_ma;
  std::optional<double> pi;
  std::optional<int> region;
};

std::vector<MethodSummary> RunEvaluate(const EvaluateConfig& config);

struct RankConfig {
  std::filesystem::path input;  // JSON array of {team, pi, rmse[, region]}
  int region = 0;               // 0: every region
  RankOptions options;
  RegionSpec regions;
  std::filesystem::path markdown_out;  // empty: stdout
  std::filesystem::path csv_out;
  std::filesystem::path plane_out;
  std::uint64_t seed = 0;
};

void RunRank(const RankConfig& config, std::ostream& out);

struct NiqeTrainConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path model_out;
  int patch_size = 96;
  double sharpness_fraction = 0.75;
  int min_images = 20;
  int border = 0;
  LumaRange luma = LumaRange::kStudio;
};

void RunNiqeTrain(const NiqeTrainConfig& config, std::ostream& out);

struct NiqeScoreConfig {
  std::filesystem::path model;
  std::vector<std::filesystem::path> images;
  int border = 4;
  LumaRange luma = LumaRange::kStudio;
};

void RunNiqeScore(const NiqeScoreConfig& config, std::ostream& out);

struct StudyPlanConfig {
  std::vector<std::string> methods;
  std::vector<std::string> images;
  std::filesystem::path image_root;  // derive images/methods when lists empty
  int raters = 35;
  int images_per_rater = 20;
  std::uint64_t seed = 0;
  std::filesystem::path plan_out;
  std::filesystem::path client_out;
};

void RunStudyPlan(const StudyPlanConfig& config, std::ostream& out);

struct StudyServeConfig {
  std::filesystem::path plan;
  std::filesystem::path log;
  std::filesystem::path image_root;
  std::filesystem::path static_root;
  std::string host = "127.0.0.1";
  int port = 8080;
};

int RunStudyServe(const StudyServeConfig& config, std::ostream& out);

struct StudyReportConfig {
  std::filesystem::path plan;
  std::filesystem::path log;
  std::filesystem::path report_out;  // empty: stdout
};

void RunStudyReport(const StudyReportConfig& config, std::ostream& out);

struct AnalyzeConfig {
  std::filesystem::path report;      // study report JSON
  std::filesystem::path scores_dir;  // <method>/<metric>.csv
  std::vector<std::string> metrics = {"rmse", "ssim", "niqe", "ma", "pi"};
  double threshold = 2.3;
  std::filesystem::path out_dir;
  bool svg = false;
  std::uint64_t seed = 0;
};

void RunAnalyze(const AnalyzeConfig& config, std::ostream& out);

// Parses argv and dispatches. Returns the process exit code.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace pdbench::cli

#endif  // PDBENCH_CLI_H_
