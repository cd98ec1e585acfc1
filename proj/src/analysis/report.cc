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
#include <cstdio>

#include "json.hpp"
#include "pdbench/analysis.h"
#include "pdbench/csv.h"
#include "pdbench/error.h"

namespace pdbench::analysis {

MetricAnalysis AnalyzeMetric(const std::string& metric,
                             const study::StudyReport& study,
                             const ScoreSet& scores,
                             MethodAggregation aggregation, double threshold) {
  MetricAnalysis out;
  out.metric = metric;
  try {
    out.method_points =
        MethodLevelTable(study.aggregates, scores, metric, aggregation);
    out.method_level = Correlate(metric, out.method_points);
  } catch (const Error& e) {
    out.method_error = e.what();
  }
  if (!out.method_points.empty()) {
    try {
      out.zoomed = RegimeZoom(metric, out.method_points, threshold);
    } catch (const Error& e) {
      out.zoom_error = e.what();
    }
  }
  try {
    out.image_points = ImageLevelTable(study.centered.scores, scores, metric);
    out.image_level = Correlate(metric, out.image_points);
  } catch (const Error& e) {
    out.image_error = e.what();
  }
  return out;
}

namespace {

nlohmann::ordered_json CorrelationJson(const CorrelationResult& c) {
  return {{"rho", c.rho},
          {"n", c.n},
          {"fit", {{"slope", c.fit.slope}, {"intercept", c.fit.intercept}}}};
}

}  // namespace

std::string CorrelationReportJson(const CorrelationReport& report,
                                  const std::string& provenance_json) {
  nlohmann::ordered_json j;
  if (!provenance_json.empty()) {
    j["provenance"] = nlohmann::ordered_json::parse(provenance_json);
  }
  j["mos_threshold"] = report.threshold;
  auto& metrics = j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& m : report.metrics) {
    nlohmann::ordered_json jm;
    if (m.method_level) {
      jm["method_level"] = CorrelationJson(*m.method_level);
    } else {
      jm["method_level"] = {{"error", m.method_error}};
    }
    if (m.zoomed) {
      jm["zoomed"] = CorrelationJson(m.zoomed->correlation);
    } else {
      jm["zoomed"] = {{"error", m.zoom_error.empty() ? m.method_error
                                                     : m.zoom_error}};
    }
    if (m.image_level) {
      jm["image_level"] = CorrelationJson(*m.image_level);
    } else {
      jm["image_level"] = {{"error", m.image_error}};
    }
    metrics[m.metric] = std::move(jm);
  }
  auto& skipped = j["skipped"] = nlohmann::ordered_json::array();
  for (const auto& [metric, reason] : report.skipped) {
    skipped.push_back({{"metric", metric}, {"reason", reason}});
  }
  return j.dump(2) + "\n";
}

std::string ScatterCsv(std::span<const AnalysisPoint> points) {
  std::string out = "key,mos,value\n";
  for (const auto& p : points) {
    out += p.key + "," + FormatDouble(p.mos) + "," +
           FormatDouble(p.metric_value) + "\n";
  }
  return out;
}

std::string ScatterSvg(const std::string& title,
                       std::span<const AnalysisPoint> points,
                       const std::optional<LinearFit>& fit) {
  constexpr double kW = 320, kH = 240, kPad = 32;
  double x0 = 0, x1 = 1, y0 = 1, y1 = 4;
  if (!points.empty()) {
    auto [xmin, xmax] = std::minmax_element(
        points.begin(), points.end(),
        [](const auto& a, const auto& b) { return a.metric_value < b.metric_value; });
    auto [ymin, ymax] = std::minmax_element(
        points.begin(), points.end(),
        [](const auto& a, const auto& b) { return a.mos < b.mos; });
    x0 = xmin->metric_value;
    x1 = xmax->metric_value;
    y0 = ymin->mos;
    y1 = ymax->mos;
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
  }
  auto sx = [&](double x) { return kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad); };
  auto sy = [&](double y) { return kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad); };
  char buf[256];
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"320\" height=\"240\">\n"
      "<rect width=\"320\" height=\"240\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"18\" font-size=\"12\">%s</text>\n", kPad,
                title.c_str());
  svg += buf;
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"steelblue\"/>\n",
                  sx(p.metric_value), sy(p.mos));
    svg += buf;
  }
  if (fit) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"red\"/>\n",
                  sx(x0), sy(fit->slope * x0 + fit->intercept), sx(x1),
                  sy(fit->slope * x1 + fit->intercept));
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace pdbench::analysis
