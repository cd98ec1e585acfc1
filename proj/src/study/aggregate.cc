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

#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "pdbench/csv.h"
#include "pdbench/error.h"
#include "pdbench/study.h"

namespace pdbench::study {

std::vector<RatingEvent> ReadEventLog(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<RatingEvent> events;
  std::size_t start = 0;
  int line_number = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    const bool terminated = end != std::string::npos;
    if (!terminated) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;
    try {
      events.push_back(EventFromJsonLine(line));
    } catch (const Error& e) {
      // An unterminated final line is an interrupted append, never acked.
      if (!terminated) break;
      throw Error(ErrorKind::kParse, path.string() + ":" +
                                         std::to_string(line_number) + ": " +
                                         e.what());
    }
  }
  return events;
}

std::vector<Vote> ResolveEvents(const StudyPlan& plan,
                                std::span<const RatingEvent> events) {
  std::map<std::string, const RaterAssignment*> by_session;
  for (const auto& r : plan.raters) by_session[r.session_id] = &r;
  std::set<std::pair<std::string, int>> seen;
  std::vector<Vote> votes;
  for (const auto& e : events) {
    auto it = by_session.find(e.session_id);
    if (it == by_session.end() || e.stimulus_index < 0 ||
        e.stimulus_index >= static_cast<int>(it->second->stimuli.size())) {
      throw Error(ErrorKind::kNotFound,
                  "event does not match the plan: session " + e.session_id +
                      ", stimulus " + std::to_string(e.stimulus_index));
    }
    if (e.score < kMinScore || e.score > kMaxScore) {
      throw Error(ErrorKind::kInvalidArgument,
                  "event score out of range: " + std::to_string(e.score));
    }
    if (!seen.emplace(e.session_id, e.stimulus_index).second) continue;
    const Stimulus& s = it->second->stimuli[e.stimulus_index];
    votes.push_back({e.session_id, s.method, s.image_id, e.score});
  }
  return votes;
}

std::vector<RatingAggregate> Aggregate(std::span<const Vote> votes) {
  std::map<std::string, std::array<int, 4>> counts;
  for (const auto& v : votes) ++counts[v.method][v.score - kMinScore];
  std::vector<RatingAggregate> out;
  for (const auto& [method, c] : counts) {
    RatingAggregate a;
    a.method = method;
    long sum = 0;
    for (int k = 0; k < 4; ++k) {
      a.n_votes += c[k];
      sum += static_cast<long>(c[k]) * (k + kMinScore);
    }
    for (int k = 0; k < 4; ++k) {
      a.histogram[k] = static_cast<double>(c[k]) / a.n_votes;
    }
    a.mos = static_cast<double>(sum) / a.n_votes;
    out.push_back(a);
  }
  return out;
}

CenteringResult PerImageCentered(std::span<const Vote> votes, int min_raters) {
  struct Cell {
    double sum = 0.0;
    int n = 0;
  };
  std::map<std::string, Cell> image_totals;
  std::map<std::string, std::set<std::string>> image_raters;
  std::map<std::pair<std::string, std::string>, Cell> cells;  // (image, method)
  for (const auto& v : votes) {
    auto& t = image_totals[v.image_id];
    t.sum += v.score;
    ++t.n;
    image_raters[v.image_id].insert(v.session_id);
    auto& c = cells[{v.image_id, v.method}];
    c.sum += v.score;
    ++c.n;
  }
  CenteringResult result;
  for (const auto& [image, raters] : image_raters) {
    if (static_cast<int>(raters.size()) < min_raters) {
      result.under_rated_images.push_back(image);
    }
  }
  for (const auto& [key, cell] : cells) {
    const auto& [image, method] = key;
    if (static_cast<int>(image_raters[image].size()) < min_raters) continue;
    const auto& t = image_totals[image];
    CenteredScore s;
    s.method = method;
    s.image_id = image;
    s.mean_score = cell.sum / cell.n;
    s.centered = s.mean_score - t.sum / t.n;
    s.n_votes = cell.n;
    result.scores.push_back(s);
  }
  return result;
}

StudyReport BuildReport(const StudyPlan& plan,
                        std::span<const RatingEvent> events) {
  const auto votes = ResolveEvents(plan, events);
  StudyReport report;
  report.aggregates = Aggregate(votes);
  report.centered = PerImageCentered(votes);
  report.events = votes.size();
  return report;
}

std::string ReportToJson(const StudyReport& report) {
  nlohmann::ordered_json j;
  j["events"] = report.events;
  auto& methods = j["methods"] = nlohmann::ordered_json::array();
  for (const auto& a : report.aggregates) {
    methods.push_back({{"method", a.method},
                       {"mos", a.mos},
                       {"histogram", a.histogram},
                       {"n_votes", a.n_votes}});
  }
  auto& per_image = j["per_image"] = nlohmann::ordered_json::array();
  for (const auto& s : report.centered.scores) {
    per_image.push_back({{"method", s.method},
                         {"image_id", s.image_id},
                         {"centered", s.centered},
                         {"mean", s.mean_score},
                         {"n", s.n_votes}});
  }
  j["under_rated_images"] = report.centered.under_rated_images;
  return j.dump(1) + "\n";
}

StudyReport ReportFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    StudyReport report;
    report.events = j.value("events", std::size_t{0});
    for (const auto& m : j.at("methods")) {
      RatingAggregate a;
      a.method = m.at("method").get<std::string>();
      a.mos = m.at("mos").get<double>();
      a.histogram = m.at("histogram").get<std::array<double, 4>>();
      a.n_votes = m.at("n_votes").get<int>();
      report.aggregates.push_back(a);
    }
    for (const auto& p : j.value("per_image", nlohmann::json::array())) {
      CenteredScore s;
      s.method = p.at("method").get<std::string>();
      s.image_id = p.at("image_id").get<std::string>();
      s.centered = p.at("centered").get<double>();
      s.mean_score = p.at("mean").get<double>();
      s.n_votes = p.at("n").get<int>();
      report.centered.scores.push_back(s);
    }
    report.centered.under_rated_images = j.value(
        "under_rated_images", std::vector<std::string>{});
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("study report: ") + e.what());
  }
}

}  // namespace pdbench::study
