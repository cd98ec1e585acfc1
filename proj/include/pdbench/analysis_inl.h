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

#ifndef PDBENCH_ANALYSIS_INL_H_
#define PDBENCH_ANALYSIS_INL_H_

#include <algorithm>
#include <numeric>
#include <vector>

namespace pdbench::analysis {

template <typename Derived>
Eigen::VectorXd FractionalRanks(const Eigen::DenseBase<Derived>& values) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return values(a) < values(b);
                   });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && values(order[j]) == values(order[i])) ++j;
    // Positions i..j-1 hold equal values: ranks i+1..j averaged.
    const double shared = 0.5 * static_cast<double>(i + 1 + j);
    for (Eigen::Index k = i; k < j; ++k) ranks(order[k]) = shared;
    i = j;
  }
  return ranks;
}

}  // namespace pdbench::analysis

#endif  // PDBENCH_ANALYSIS_INL_H_
