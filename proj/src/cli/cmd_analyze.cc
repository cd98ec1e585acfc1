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
#include <ostream>
#include <set>

#include "internal.h"
#include "pdbench/analysis.h"
#include "pdbench/cli.h"
#include "pdbench/csv.h"

namespace pdbench::cli {
namespace {

// Per-image values of `metric` for every method that has a score file.
// "rmse" falls back to mse.csv: sqrt per image, sqrt of the mean per method.
struct LoadedMetric {
  ScoreSet per_image;
  ScoreSet method_source;
  analysis::MethodAggregation aggregation = analysis::MethodAggregation::kMean;
  std::size_t files = 0;
};

LoadedMetric LoadMetric(const std::filesystem::path& scores_dir,
                        const std::vector<std::string>& methods,
                        const std::string& metric) {
  LoadedMetric loaded;
  for (const auto& method : methods) {
    const auto direct = scores_dir / method / (metric + ".csv");
    const auto mse = scores_dir / method / "mse.csv";
    std::error_code ec;
    if (std::filesystem::is_regular_file(direct, ec)) {
      const ScoreSet s = LoadScores(direct, method, metric);
      loaded.per_image.Merge(s);
      loaded.method_source.Merge(s);
      ++loaded.files;
    } else if (metric == "rmse" && std::filesystem::is_regular_file(mse, ec)) {
      const ScoreSet s = LoadScores(mse, method, metric);
      for (const auto& r : s.records()) {
        loaded.per_image.Add({r.method, r.image_id, r.metric, std::sqrt(r.value)});
      }
      loaded.method_source.Merge(s);
      loaded.aggregation = analysis::MethodAggregation::kRootMean;
      ++loaded.files;
    }
  }
  return loaded;
}

}  // namespace

void RunAnalyze(const AnalyzeConfig& config, std::ostream& out) {
  RequireFile(config.report, "--report");
  RequireDirectory(config.scores_dir, "--scores");
  if (config.out_dir.empty()) throw ValidationError("--out is required");
  const study::StudyReport report =
      study::ReportFromJson(ReadTextFile(config.report));
  std::vector<std::string> methods;
  for (const auto& a : report.aggregates) methods.push_back(a.method);

  CanonicalConfig canon;
  canon.Add("report", config.report.string())
      .Add("scores", config.scores_dir.string())
      .Add("metrics", config.metrics)
      .Add("threshold", config.threshold);

  analysis::CorrelationReport corr;
  corr.threshold = config.threshold;
  for (const auto& metric : config.metrics) {
    const LoadedMetric loaded = LoadMetric(config.scores_dir, methods, metric);
    if (loaded.files == 0) {
      corr.skipped.emplace_back(metric, "no score files found");
      continue;
    }
    analysis::MetricAnalysis result = analysis::AnalyzeMetric(
        metric, report, loaded.method_source, loaded.aggregation,
        config.threshold);
    // Image-level uses per-image values, which differ from the method
    // source only for the rmse fallback.
    if (loaded.aggregation == analysis::MethodAggregation::kRootMean) {
      result.image_points.clear();
      result.image_level.reset();
      result.image_error.clear();
      try {
        result.image_points = analysis::ImageLevelTable(
            report.centered.scores, loaded.per_image, metric);
        result.image_level = analysis::Correlate(metric, result.image_points);
      } catch (const Error& e) {
        result.image_error = e.what();
      }
    }
    WriteTextFile(config.out_dir / ("scatter_methods_" + metric + ".csv"),
                  analysis::ScatterCsv(result.method_points));
    WriteTextFile(config.out_dir / ("scatter_images_" + metric + ".csv"),
                  analysis::ScatterCsv(result.image_points));
    if (config.svg) {
      std::optional<analysis::LinearFit> fit;
      if (result.method_level) fit = result.method_level->fit;
      WriteTextFile(config.out_dir / ("scatter_methods_" + metric + ".svg"),
                    analysis::ScatterSvg(metric, result.method_points, fit));
    }
    corr.metrics.push_back(std::move(result));
  }
  WriteTextFile(config.out_dir / "corr_report.json",
                analysis::CorrelationReportJson(
                    corr, ProvenanceJson("analyze", canon.str(), config.seed)));
  for (const auto& m : corr.metrics) {
    out << m.metric << ": ";
    if (m.method_level) {
      out << "rho=" << FormatFixed(m.method_level->rho, 3)
          << " n=" << m.method_level->n;
    } else {
      out << "unavailable (" << m.method_error << ")";
    }
    out << "\n";
  }
  for (const auto& [metric, reason] : corr.skipped) {
    out << metric << ": skipped (" << reason << ")\n";
  }
}

}  // namespace pdbench::cli
