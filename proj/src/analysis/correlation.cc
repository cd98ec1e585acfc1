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

#include "pdbench/analysis.h"
#include "pdbench/error.h"

namespace pdbench::analysis {

double Pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "correlation inputs differ in length");
  }
  const Eigen::VectorXd dx = x.array() - x.mean();
  const Eigen::VectorXd dy = y.array() - y.mean();
  const double sxx = dx.squaredNorm();
  const double syy = dy.squaredNorm();
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw Error(ErrorKind::kDegenerateInput, "correlation of a constant input");
  }
  return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

double Spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "Spearman inputs differ in length: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  }
  if (x.size() < 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "Spearman needs at least 3 points");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  try {
    return Pearson(FractionalRanks(xv), FractionalRanks(yv));
  } catch (const Error&) {
    throw Error(ErrorKind::kDegenerateInput,
                "Spearman undefined: an input has zero rank variance");
  }
}

LinearFit FitLine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "fit inputs differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "line fit needs at least 2 points");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const double mx = xv.mean();
  const double my = yv.mean();
  const Eigen::VectorXd dx = xv.array() - mx;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0)) {
    throw Error(ErrorKind::kDegenerateInput, "line fit with constant x");
  }
  LinearFit fit;
  fit.slope = dx.dot(yv.array().matrix() - Eigen::VectorXd::Constant(n, my)) / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

CorrelationResult Correlate(const std::string& metric,
                            std::span<const AnalysisPoint> points) {
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(p.metric_value);
    y.push_back(p.mos);
  }
  CorrelationResult r;
  r.metric = metric;
  r.n = points.size();
  r.rho = Spearman(x, y);
  r.fit = FitLine(x, y);
  return r;
}

ZoomResult RegimeZoom(const std::string& metric,
                      std::span<const AnalysisPoint> points, double threshold) {
  ZoomResult zoom;
  for (const auto& p : points) {
    if (p.mos > threshold) zoom.points.push_back(p);
  }
  if (zoom.points.size() < 3) {
    throw Error(ErrorKind::kDegenerateInput,
                std::to_string(zoom.points.size()) +
                    " points above the MOS threshold; at least 3 are needed");
  }
  zoom.correlation = Correlate(metric, zoom.points);
  return zoom;
}

}  // namespace pdbench::analysis
