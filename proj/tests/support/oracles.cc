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

#include "oracles.h"

#include <cmath>

namespace pdbench::testing {
namespace {

// Mirror about the pixel edges: -1 -> 0, n -> n - 1.
int Mirror(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

double Keys(double x) {
  // a = -0.5
  x = std::fabs(x);
  if (x < 1.0) return 1.5 * x * x * x - 2.5 * x * x + 1.0;
  if (x < 2.0) return -0.5 * x * x * x + 2.5 * x * x - 4.0 * x + 2.0;
  return 0.0;
}

}  // namespace

double BruteForceSsim(const YPlane& a, const YPlane& b) {
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  double w[kWin][kWin];
  double total = 0.0;
  for (int i = 0; i < kWin; ++i) {
    for (int j = 0; j < kWin; ++j) {
      const double di = i - 5, dj = j - 5;
      w[i][j] = std::exp(-(di * di + dj * dj) / (2 * kSigma * kSigma));
      total += w[i][j];
    }
  }
  double sum = 0.0;
  int count = 0;
  for (int r = 0; r + kWin <= a.rows(); ++r) {
    for (int c = 0; c + kWin <= a.cols(); ++c) {
      double ma = 0, mb = 0;
      for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
          ma += w[i][j] / total * a(r + i, c + j);
          mb += w[i][j] / total * b(r + i, c + j);
        }
      }
      double va = 0, vb = 0, cov = 0;
      for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
          const double da = a(r + i, c + j) - ma;
          const double db = b(r + i, c + j) - mb;
          va += w[i][j] / total * da * da;
          vb += w[i][j] / total * db * db;
          cov += w[i][j] / total * da * db;
        }
      }
      sum += ((2 * ma * mb + c1) * (2 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return sum / count;
}

std::vector<double> BruteForceRanks(const std::vector<double>& x) {
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    ranks[i] = less + (equal + 1) / 2.0;
  }
  return ranks;
}

double BruteForcePearson(const std::vector<double>& x,
                         const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double BruteForceSpearman(const std::vector<double>& x,
                          const std::vector<double>& y) {
  return BruteForcePearson(BruteForceRanks(x), BruteForceRanks(y));
}

YPlane DirectBicubicDownsample(const YPlane& plane, int factor) {
  const int out_rows = static_cast<int>(plane.rows()) / factor;
  const int out_cols = static_cast<int>(plane.cols()) / factor;
  const double s = 1.0 / factor;
  const int reach = 2 * factor + 1;
  YPlane out(out_rows, out_cols);
  for (int u = 0; u < out_rows; ++u) {
    for (int v = 0; v < out_cols; ++v) {
      const double cy = (u + 0.5) * factor - 0.5;
      const double cx = (v + 0.5) * factor - 0.5;
      double acc = 0, norm = 0;
      for (int i = static_cast<int>(std::floor(cy)) - reach;
           i <= static_cast<int>(std::ceil(cy)) + reach; ++i) {
        for (int j = static_cast<int>(std::floor(cx)) - reach;
             j <= static_cast<int>(std::ceil(cx)) + reach; ++j) {
          const double w = Keys(s * (cy - i)) * Keys(s * (cx - j));
          if (w == 0.0) continue;
          acc += w * plane(Mirror(i, static_cast<int>(plane.rows())),
                           Mirror(j, static_cast<int>(plane.cols())));
          norm += w;
        }
      }
      out(u, v) = acc / norm;
    }
  }
  return out;
}

double DirectMscn(const YPlane& y, int row, int col) {
  const double sigma = 7.0 / 6.0;
  double mean = 0, second = 0, total = 0;
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      const double w = std::exp(-(i * i + j * j) / (2 * sigma * sigma));
      const double v = y(Mirror(row + i, static_cast<int>(y.rows())),
                         Mirror(col + j, static_cast<int>(y.cols())));
      mean += w * v;
      second += w * v * v;
      total += w;
    }
  }
  mean /= total;
  second /= total;
  const double deviation = std::sqrt(std::fabs(second - mean * mean));
  return (y(row, col) - mean) / (deviation + 1.0);
}

}  // namespace pdbench::testing
