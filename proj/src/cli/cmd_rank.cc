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

#include <ostream>

#include "internal.h"
#include "pdbench/cli.h"
#include "pdbench/csv.h"

namespace pdbench::cli {

void RunRank(const RankConfig& config, std::ostream& out) {
  RequireFile(config.input, "--input");
  if (config.region < 0 || config.region > 3) {
    throw ValidationError("--region must be 0 (all), 1, 2 or 3");
  }
  if (config.options.eps_pi < 0.0 || config.options.eps_rmse < 0.0) {
    throw ValidationError("margins must be non-negative");
  }
  const auto entries = ParseSubmissionsJson(ReadTextFile(config.input));

  CanonicalConfig canon;
  canon.Add("input", config.input.string())
      .Add("region", static_cast<double>(config.region))
      .Add("eps_pi", config.options.eps_pi)
      .Add("eps_rmse", config.options.eps_rmse);
  const std::string comment =
      ProvenanceCsvComment("rank", canon.str(), config.seed);

  std::string markdown =
      "<!-- " + comment.substr(2, comment.size() - 3) + " -->\n\n";
  std::string csv = comment;
  bool first_csv = true;
  for (int region = 1; region <= 3; ++region) {
    if (config.region != 0 && region != config.region) continue;
    const auto members = FilterRegion(entries, region, config.regions);
    std::vector<RankedEntry> ranked;
    if (!members.empty()) ranked = Rank(members, config.options);
    markdown += LeaderboardMarkdown(region, ranked, config.regions) + "\n";
    csv += LeaderboardCsv(region, ranked, first_csv);
    first_csv = false;
  }

  if (config.markdown_out.empty()) {
    out << markdown;
  } else {
    WriteTextFile(config.markdown_out, markdown);
  }
  if (!config.csv_out.empty()) WriteTextFile(config.csv_out, csv);
  if (!config.plane_out.empty()) {
    WriteTextFile(config.plane_out, PlaneCsv(PlaneExport(entries, config.regions)));
  }
}

}  // namespace pdbench::cli
