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

#ifndef PDBENCH_ANALYSIS_H_
#define PDBENCH_ANALYSIS_H_

// Agreement between quality measures and mean opinion scores.

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdbench/scores.h"
#include "pdbench/study.h"

namespace pdbench::analysis {

// 1-based ranks; tied values share the mean of the ranks they span.
template <typename Derived>
Eigen::VectorXd FractionalRanks(const Eigen::DenseBase<Derived>& values);

// Pearson correlation. Throws if either input has zero variance.
double Pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y);

// Pearson correlation of fractional ranks. Needs equal lengths >= 3.
double Spearman(std::span<const double> x, std::span<const double> y);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of y on x. Needs n >= 2 and non-constant x.
LinearFit FitLine(std::span<const double> x, std::span<const double> y);

struct AnalysisPoint {
  std::string key;  // method, or "method/image"
  double mos = 0.0;
  double metric_value = 0.0;
};

struct CorrelationResult {
  std::string metric;
  double rho = 0.0;
  std::size_t n = 0;
  LinearFit fit;
};

CorrelationResult Correlate(const std::string& metric,
                            std::span<const AnalysisPoint> points);

struct ZoomResult {
  std::vector<AnalysisPoint> points;
  CorrelationResult correlation;
};

inline constexpr double kHighQualityMos = 2.3;

// Keeps points with mos > threshold and refits. Throws kDegenerateInput with
// fewer than three survivors.
ZoomResult RegimeZoom(const std::string& metric,
                      std::span<const AnalysisPoint> points,
                      double threshold = kHighQualityMos);

// How a metric's per-image values collapse to one value per method.
enum class MethodAggregation {
  kMean,
  kRootMean,  // sqrt(mean): per-image MSE -> dataset RMSE
};

// One point per MOS entry, joining the method's aggregated metric value.
// Throws kMissingData naming every method without metric values.
std::vector<AnalysisPoint> MethodLevelTable(
    std::span<const study::RatingAggregate> mos, const ScoreSet& scores,
    const std::string& metric,
    MethodAggregation aggregation = MethodAggregation::kMean);

// One point per rated output. The metric is centered per image over the
// joined methods, matching the already-centered MOS. Throws kMissingData
// listing uncovered (method, image) pairs.
std::vector<AnalysisPoint> ImageLevelTable(
    std::span<const study::CenteredScore> centered_mos, const ScoreSet& scores,
    const std::string& metric);


// Everything reported for one metric. Optional parts are absent when the
// data cannot support them; `*_error` then says why.
struct MetricAnalysis {
  std::string metric;
  std::vector<AnalysisPoint> method_points;
  std::optional<CorrelationResult> method_level;
  std::optional<ZoomResult> zoomed;
  std::vector<AnalysisPoint> image_points;
  std::optional<CorrelationResult> image_level;
  std::string method_error;
  std::string zoom_error;
  std::string image_error;
};

struct CorrelationReport {
  std::vector<MetricAnalysis> metrics;
  std::vector<std::pair<std::string, std::string>> skipped;  // metric, reason
  double threshold = kHighQualityMos;
};

// Never throws for per-metric data problems; they are recorded instead.
MetricAnalysis AnalyzeMetric(const std::string& metric,
                             const study::StudyReport& study,
                             const ScoreSet& scores,
                             MethodAggregation aggregation,
                             double threshold = kHighQualityMos);

// {metric -> {rho, fit, n, zoomed rho, image-level rho}}, plus skipped.
std::string CorrelationReportJson(const CorrelationReport& report,
                                  const std::string& provenance_json = "");
std::string ScatterCsv(std::span<const AnalysisPoint> points);
std::string ScatterSvg(const std::string& title,
                       std::span<const AnalysisPoint> points,
                       const std::optional<LinearFit>& fit);

}  // namespace pdbench::analysis

#include "pdbench/analysis_inl.h"

#endif  // PDBENCH_ANALYSIS_H_
