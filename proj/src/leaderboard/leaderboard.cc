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

#include "pdbench/leaderboard.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "json.hpp"
#include "pdbench/csv.h"
#include "pdbench/error.h"

namespace pdbench {

std::optional<int> AssignRegion(double rmse, const RegionSpec& spec) {
  for (std::size_t k = 0; k < spec.thresholds.size(); ++k) {
    if (rmse <= spec.thresholds[k]) return static_cast<int>(k) + 1;
  }
  return std::nullopt;
}

bool WithinMargin(double a, double b, double eps) {
  return std::abs(a - b) <= eps * (1.0 + 1e-9);
}

namespace {

bool LexLess(const SubmissionSummary& a, const SubmissionSummary& b) {
  return std::tie(a.pi, a.rmse, a.team) < std::tie(b.pi, b.rmse, b.team);
}

}  // namespace

std::vector<RankedEntry> Rank(std::span<const SubmissionSummary> entries,
                              const RankOptions& options) {
  if (entries.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "nothing to rank");
  }
  std::vector<SubmissionSummary> order(entries.begin(), entries.end());
  std::sort(order.begin(), order.end(), LexLess);

  auto tied = [&](const SubmissionSummary& a, const SubmissionSummary& b) {
    return WithinMargin(a.pi, b.pi, options.eps_pi) &&
           WithinMargin(a.rmse, b.rmse, options.eps_rmse);
  };

  // Marginal-PI neighbours: the lower RMSE moves up. Each swap removes one
  // RMSE inversion, so this terminates.
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const auto& a = order[i];
      const auto& b = order[i + 1];
      if (WithinMargin(a.pi, b.pi, options.eps_pi) && b.rmse < a.rmse &&
          !tied(a, b)) {
        std::swap(order[i], order[i + 1]);
        swapped = true;
      }
    }
  }

  std::vector<RankedEntry> ranked;
  ranked.reserve(order.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           std::all_of(order.begin() + start, order.begin() + end,
                       [&](const auto& m) { return tied(m, order[end]); })) {
      ++end;
    }
    std::sort(order.begin() + start, order.begin() + end, LexLess);
    for (std::size_t i = start; i < end; ++i) {
      ranked.push_back({static_cast<int>(start) + 1, end - start > 1, order[i]});
    }
    start = end;
  }
  return ranked;
}

std::vector<SubmissionSummary> ParseSubmissionsJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("submissions: ") + e.what());
  }
  if (!j.is_array()) {
    throw Error(ErrorKind::kParse, "submissions must be a JSON array");
  }
  std::vector<SubmissionSummary> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& item = j[i];
    try {
      SubmissionSummary s;
      s.team = item.at("team").get<std::string>();
      s.pi = item.at("pi").get<double>();
      s.rmse = item.at("rmse").get<double>();
      s.region_target = item.value("region", 0);
      if (!std::isfinite(s.pi) || !std::isfinite(s.rmse) || s.rmse < 0.0) {
        throw Error(ErrorKind::kParse, "non-finite PI or invalid RMSE");
      }
      if (s.region_target < 0 || s.region_target > 3) {
        throw Error(ErrorKind::kParse, "region must be 1, 2 or 3");
      }
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParse, "submission #" + std::to_string(i) +
                                         ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse, "submission #" + std::to_string(i) +
                                         ": " + e.what());
    }
  }
  return out;
}

std::string SubmissionsToJson(std::span<const SubmissionSummary> entries) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& s : entries) {
    nlohmann::ordered_json item;
    item["team"] = s.team;
    if (s.region_target != 0) item["region"] = s.region_target;
    item["pi"] = s.pi;
    item["rmse"] = s.rmse;
    j.push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

std::vector<SubmissionSummary> FilterRegion(
    std::span<const SubmissionSummary> entries, int region,
    const RegionSpec& spec) {
  std::vector<SubmissionSummary> out;
  for (const auto& s : entries) {
    const int r =
        s.region_target != 0 ? s.region_target : AssignRegion(s.rmse, spec).value_or(0);
    if (r == region) out.push_back(s);
  }
  return out;
}

std::string LeaderboardMarkdown(int region, std::span<const RankedEntry> ranked,
                                const RegionSpec& spec) {
  std::string out = "## Region " + std::to_string(region);
  if (region >= 1 && region <= 3) {
    out += " (RMSE <= " + FormatDouble(spec.thresholds[region - 1]) + ")";
  }
  out += "\n\n| # | Team | PI | RMSE |\n|---|------|----|------|\n";
  std::vector<std::string> notes;
  for (const auto& e : ranked) {
    out += "| " + std::to_string(e.rank) + (e.tied ? "*" : "") + " | " +
           e.submission.team + " | " + FormatFixed(e.submission.pi, 3) +
           " | " + FormatFixed(e.submission.rmse, 2) + " |\n";
    if (e.submission.pi < 0.0) {
      notes.push_back(e.submission.team + " has a negative PI");
    }
    const auto band = AssignRegion(e.submission.rmse, spec);
    if (!band || *band > region) {
      notes.push_back(e.submission.team + " exceeds the region's RMSE bound");
    }
  }
  if (!notes.empty()) {
    out += "\n";
    for (const auto& n : notes) out += "> note: " + n + "\n";
  }
  return out;
}

std::string LeaderboardCsv(int region, std::span<const RankedEntry> ranked,
                           bool with_header) {
  std::string out = with_header ? "region,rank,tied,team,pi,rmse\n" : "";
  for (const auto& e : ranked) {
    out += std::to_string(region) + "," + std::to_string(e.rank) + "," +
           (e.tied ? "1" : "0") + "," + e.submission.team + "," +
           FormatDouble(e.submission.pi) + "," +
           FormatDouble(e.submission.rmse) + "\n";
  }
  return out;
}

std::vector<PlanePoint> PlaneExport(std::span<const SubmissionSummary> entries,
                                    const RegionSpec& spec) {
  std::vector<PlanePoint> out;
  out.reserve(entries.size());
  for (const auto& s : entries) {
    const int region = s.region_target != 0
                           ? s.region_target
                           : AssignRegion(s.rmse, spec).value_or(0);
    out.push_back({s.rmse, s.pi, s.team, region});
  }
  return out;
}

std::string PlaneCsv(std::span<const PlanePoint> points) {
  std::string out = "rmse,pi,team,region\n";
  for (const auto& p : points) {
    out += FormatDouble(p.rmse) + "," + FormatDouble(p.pi) + "," + p.team +
           "," + std::to_string(p.region) + "\n";
  }
  return out;
}

std::vector<PlanePoint> ParsePlaneCsv(std::string_view text) {
  const CsvTable table = ParseCsv(text, "plane");
  if (table.header !=
      std::vector<std::string>{"rmse", "pi", "team", "region"}) {
    throw Error(ErrorKind::kParse, "plane: expected header rmse,pi,team,region");
  }
  std::vector<PlanePoint> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto rmse = ParseFiniteDouble(row[0]);
    const auto pi = ParseFiniteDouble(row[1]);
    const auto region = ParseFiniteDouble(row[3]);
    if (!rmse || !pi || !region) {
      throw Error(ErrorKind::kParse,
                  "plane:" + std::to_string(table.line_numbers[i]) +
                      ": bad number");
    }
    out.push_back({*rmse, *pi, row[2], static_cast<int>(*region)});
  }
  return out;
}

std::string PlaneJson(std::span<const PlanePoint> points) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    j.push_back({{"rmse", p.rmse}, {"pi", p.pi}, {"team", p.team},
                 {"region", p.region}});
  }
  return j.dump(2) + "\n";
}

}  // namespace pdbench
