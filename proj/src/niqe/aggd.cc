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
#include <vector>

#include "pdbench/niqe.h"

namespace pdbench::niqe {

double AggdMomentRatio(double alpha) {
  return std::exp(2.0 * std::lgamma(2.0 / alpha) - std::lgamma(1.0 / alpha) -
                  std::lgamma(3.0 / alpha));
}

namespace {

constexpr int kGridSize =
    static_cast<int>((kAlphaMax - kAlphaMin) / kAlphaStep + 0.5) + 1;

double GridAlpha(int k) { return kAlphaMin + k * kAlphaStep; }

const std::vector<double>& RatioTable() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kGridSize);
    for (int k = 0; k < kGridSize; ++k) t[k] = AggdMomentRatio(GridAlpha(k));
    return t;
  }();
  return table;
}

}  // namespace

AggdParams FitAggd(std::span<const double> samples) {
  if (samples.size() < static_cast<std::size_t>(kMinAggdSamples)) {
    throw Error(ErrorKind::kDegenerateInput,
                "AGGD fit needs at least " + std::to_string(kMinAggdSamples) +
                    " samples, got " + std::to_string(samples.size()));
  }
  double neg_sq = 0.0, pos_sq = 0.0, abs_sum = 0.0;
  std::size_t neg_count = 0, pos_count = 0;
  for (double x : samples) {
    if (x < 0.0) {
      neg_sq += x * x;
      abs_sum -= x;
      ++neg_count;
    } else if (x > 0.0) {
      pos_sq += x * x;
      abs_sum += x;
      ++pos_count;
    }
  }
  if (neg_count == 0 || pos_count == 0) {
    throw Error(ErrorKind::kDegenerateInput,
                neg_count + pos_count == 0
                    ? "AGGD fit on all-zero samples"
                    : "AGGD fit needs samples on both sides of zero");
  }
  const double n = static_cast<double>(samples.size());
  const double left = std::sqrt(neg_sq / static_cast<double>(neg_count));
  const double right = std::sqrt(pos_sq / static_cast<double>(pos_count));
  const double r_hat = (abs_sum / n) * (abs_sum / n) / ((neg_sq + pos_sq) / n);
  // r_hat * (g^3 + 1)(g + 1) / (g^2 + 1)^2 with g = left / right, written
  // symmetrically in (left, right) so mirrored samples select the same alpha.
  const double sum_sq = left * left + right * right;
  const double r_hat_norm = r_hat * (left * left * left + right * right * right) *
                            (left + right) / (sum_sq * sum_sq);

  const auto& table = RatioTable();
  int best = 0;
  double best_err = std::abs(table[0] - r_hat_norm);
  for (int k = 1; k < kGridSize; ++k) {
    const double err = std::abs(table[k] - r_hat_norm);
    if (err < best_err) {
      best_err = err;
      best = k;
    }
  }
  AggdParams p;
  p.alpha = GridAlpha(best);
  p.left_sigma = left;
  p.right_sigma = right;
  p.mean_offset = (right - left) *
                  std::exp(std::lgamma(2.0 / p.alpha) -
                           std::lgamma(1.0 / p.alpha)) *
                  std::sqrt(std::exp(std::lgamma(1.0 / p.alpha) -
                                     std::lgamma(3.0 / p.alpha)));
  return p;
}

}  // namespace pdbench::niqe
