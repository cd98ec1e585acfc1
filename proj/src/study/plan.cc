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
#include <numeric>
#include <random>
#include <set>

#include "json.hpp"
#include "pdbench/error.h"
#include "pdbench/hash.h"
#include "pdbench/study.h"

namespace pdbench::study {
namespace {

// Fisher-Yates with rejection sampling, so plans do not depend on the
// standard library's distribution implementations.
template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = rng();
    } while (draw >= limit);
    std::swap(v[i - 1], v[draw % bound]);
  }
}

std::string SessionId(std::uint64_t seed, std::size_t rater) {
  return "s" + Fnv1a64()
                   .Update(seed)
                   .Update(std::string_view("session"))
                   .Update(static_cast<std::uint64_t>(rater))
                   .hex()
                   .substr(0, 12);
}

std::string StimulusToken(std::uint64_t seed, const std::string& session,
                          std::size_t index) {
  return Fnv1a64()
      .Update(seed)
      .Update(std::string_view("stimulus"))
      .Update(std::string_view(session))
      .Update(static_cast<std::uint64_t>(index))
      .hex();
}

void CheckUnique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty() || !seen.insert(n).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(what) + " names must be unique and non-empty: '" +
                      n + "'");
    }
  }
}

}  // namespace

StudyPlan BuildPlan(const PlanOptions& options) {
  if (options.methods.empty() || options.images.empty() ||
      options.raters < 1 || options.images_per_rater < 1 ||
      options.images_per_rater > static_cast<int>(options.images.size())) {
    throw Error(ErrorKind::kInvalidArgument,
                "infeasible study: need >= 1 method, >= 1 rater and 1 <= "
                "images_per_rater <= " +
                    std::to_string(options.images.size()));
  }
  CheckUnique(options.methods, "method");
  CheckUnique(options.images, "image");

  StudyPlan plan;
  plan.seed = options.seed;
  plan.methods = options.methods;
  plan.images = options.images;
  plan.images_per_rater = options.images_per_rater;

  std::mt19937_64 rng(options.seed);
  std::vector<int> coverage(options.images.size(), 0);
  for (int r = 0; r < options.raters; ++r) {
    // Least-covered images first; a fresh random order breaks ties.
    std::vector<std::size_t> candidates(options.images.size());
    std::iota(candidates.begin(), candidates.end(), 0);
    Shuffle(candidates, rng);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) {
                       return coverage[a] < coverage[b];
                     });
    candidates.resize(options.images_per_rater);
    std::sort(candidates.begin(), candidates.end());

    RaterAssignment rater;
    rater.session_id = SessionId(options.seed, r);
    for (std::size_t image : candidates) {
      ++coverage[image];
      for (const auto& method : options.methods) {
        rater.stimuli.push_back({method, options.images[image], ""});
      }
    }
    Shuffle(rater.stimuli, rng);
    for (std::size_t i = 0; i < rater.stimuli.size(); ++i) {
      rater.stimuli[i].token = StimulusToken(options.seed, rater.session_id, i);
    }
    plan.raters.push_back(std::move(rater));
  }
  return plan;
}

std::string PlanToJson(const StudyPlan& plan) {
  nlohmann::ordered_json j;
  j["seed"] = plan.seed;
  j["methods"] = plan.methods;
  j["images"] = plan.images;
  j["images_per_rater"] = plan.images_per_rater;
  auto& raters = j["raters"] = nlohmann::ordered_json::array();
  for (const auto& r : plan.raters) {
    nlohmann::ordered_json jr;
    jr["session_id"] = r.session_id;
    auto& stimuli = jr["stimuli"] = nlohmann::ordered_json::array();
    for (const auto& s : r.stimuli) {
      stimuli.push_back({{"method", s.method},
                         {"image", s.image_id},
                         {"token", s.token}});
    }
    raters.push_back(std::move(jr));
  }
  return j.dump(1) + "\n";
}

StudyPlan PlanFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    StudyPlan plan;
    plan.seed = j.at("seed").get<std::uint64_t>();
    plan.methods = j.at("methods").get<std::vector<std::string>>();
    plan.images = j.at("images").get<std::vector<std::string>>();
    plan.images_per_rater = j.at("images_per_rater").get<int>();
    for (const auto& jr : j.at("raters")) {
      RaterAssignment r;
      r.session_id = jr.at("session_id").get<std::string>();
      for (const auto& s : jr.at("stimuli")) {
        r.stimuli.push_back({s.at("method").get<std::string>(),
                             s.at("image").get<std::string>(),
                             s.at("token").get<std::string>()});
      }
      plan.raters.push_back(std::move(r));
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("study plan: ") + e.what());
  }
}

std::string ClientPlanJson(const StudyPlan& plan) {
  nlohmann::ordered_json j;
  auto& sessions = j["sessions"] = nlohmann::ordered_json::array();
  for (const auto& r : plan.raters) {
    std::vector<std::string> tokens;
    for (const auto& s : r.stimuli) tokens.push_back(s.token);
    sessions.push_back({{"session_id", r.session_id},
                        {"stimuli", std::move(tokens)}});
  }
  return j.dump() + "\n";
}

std::string EventToJsonLine(const RatingEvent& event) {
  nlohmann::ordered_json j;
  j["session"] = event.session_id;
  j["stim"] = event.stimulus_index;
  j["score"] = event.score;
  j["ts"] = event.timestamp_ms;
  return j.dump() + "\n";
}

RatingEvent EventFromJsonLine(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    RatingEvent e;
    e.session_id = j.at("session").get<std::string>();
    e.stimulus_index = j.at("stim").get<int>();
    e.score = j.at("score").get<int>();
    e.timestamp_ms = j.at("ts").get<std::int64_t>();
    return e;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("event log line: ") + e.what());
  }
}

}  // namespace pdbench::study
