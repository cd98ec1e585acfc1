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

#ifndef PDBENCH_STUDY_H_
#define PDBENCH_STUDY_H_

// Human-opinion study: balanced blinded plans, a rating engine with an
// append-only event log, and MOS / histogram / per-image centered
// aggregation.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pdbench::study {

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 4;

// Labels of the four-point realism scale, in score order.
inline constexpr std::array<const char*, 4> kScaleLabels = {
    "Definitely fake", "Probably fake", "Probably real", "Definitely real"};

struct Stimulus {
  std::string method;
  std::string image_id;
  std::string token;  // opaque, reveals neither method nor image
};

struct RaterAssignment {
  std::string session_id;
  std::vector<Stimulus> stimuli;  // presentation order
};

struct StudyPlan {
  std::uint64_t seed = 0;
  std::vector<std::string> methods;
  std::vector<std::string> images;
  int images_per_rater = 0;
  std::vector<RaterAssignment> raters;
};

struct PlanOptions {
  std::vector<std::string> methods;
  std::vector<std::string> images;
  int raters = 35;
  int images_per_rater = 20;
  std::uint64_t seed = 0;
};

// Each rater sees every method on `images_per_rater` images chosen to keep
// per-image rater counts as equal as possible, in a per-rater shuffled
// order. Deterministic in the options.
StudyPlan BuildPlan(const PlanOptions& options);

std::string PlanToJson(const StudyPlan& plan);
StudyPlan PlanFromJson(const std::string& text);
// The blinded view handed to clients: session ids and tokens only.
std::string ClientPlanJson(const StudyPlan& plan);

struct RatingEvent {
  std::string session_id;
  int stimulus_index = 0;
  int score = 0;
  std::int64_t timestamp_ms = 0;

  bool operator==(const RatingEvent&) const = default;
};

// {"session":...,"stim":...,"score":...,"ts":...}
std::string EventToJsonLine(const RatingEvent& event);
RatingEvent EventFromJsonLine(const std::string& line);
std::vector<RatingEvent> ReadEventLog(const std::filesystem::path& path);

// A rating joined with its stimulus.
struct Vote {
  std::string session_id;
  std::string method;
  std::string image_id;
  int score = 0;
};

// Joins events with the plan. The first event per (session, stimulus)
// wins; events that do not match the plan throw kNotFound.
std::vector<Vote> ResolveEvents(const StudyPlan& plan,
                                std::span<const RatingEvent> events);

struct RatingAggregate {
  std::string method;
  double mos = 0.0;
  std::array<double, 4> histogram{};  // fractions of scores 1..4
  int n_votes = 0;
};

// Sorted by method; methods without votes are omitted.
std::vector<RatingAggregate> Aggregate(std::span<const Vote> votes);

struct CenteredScore {
  std::string method;
  std::string image_id;
  double centered = 0.0;   // mean score minus the image's grand mean
  double mean_score = 0.0;
  int n_votes = 0;
};

struct CenteringResult {
  std::vector<CenteredScore> scores;  // sorted by (image, method)
  std::vector<std::string> under_rated_images;  // excluded from scores
};

CenteringResult PerImageCentered(std::span<const Vote> votes,
                                 int min_raters = 2);

struct StudyReport {
  std::vector<RatingAggregate> aggregates;
  CenteringResult centered;
  std::size_t events = 0;
};

StudyReport BuildReport(const StudyPlan& plan,
                        std::span<const RatingEvent> events);
std::string ReportToJson(const StudyReport& report);
StudyReport ReportFromJson(const std::string& text);

struct NextItem {
  bool done = false;
  int stimulus_index = 0;
  std::string token;
  std::string image_url;
  int progress = 0;  // stimuli already rated
  int total = 0;
};

// Thread-safe session state over an immutable plan. Ratings are appended to
// the log one line per write before they are acknowledged.
class StudyEngine {
 public:
  using Clock = std::function<std::int64_t()>;

  // Replays an existing log so that restarts resume sessions.
  StudyEngine(StudyPlan plan, std::filesystem::path log_path,
              Clock clock = nullptr);
  ~StudyEngine();
  StudyEngine(const StudyEngine&) = delete;
  StudyEngine& operator=(const StudyEngine&) = delete;

  // Hands out the next unclaimed rater slot, or resumes `resume_id`.
  // Throws kNotFound for an unknown resume id or when every slot is taken.
  std::string CreateSession(const std::optional<std::string>& resume_id = {});

  NextItem Next(const std::string& session_id) const;

  // Throws kInvalidArgument for a score outside 1..4 or a token that is not
  // the session's current stimulus, kDuplicate for an already rated one,
  // kNotFound for an unknown session. The log is untouched on error.
  RatingEvent Record(const std::string& session_id, const std::string& token,
                     int score);

  struct ResolvedStimulus {
    std::string method;
    std::string image_id;
  };
  std::optional<ResolvedStimulus> Resolve(const std::string& token) const;

  std::vector<RatingEvent> Events() const;
  StudyReport Report() const;
  const StudyPlan& plan() const { return plan_; }

 private:
  struct SessionState {
    std::size_t rater = 0;
    std::vector<bool> rated;
    int progress = 0;
    bool claimed = false;
  };

  SessionState& FindSession(const std::string& session_id);
  const SessionState& FindSession(const std::string& session_id) const;
  void Append(const RatingEvent& event);

  const StudyPlan plan_;
  const std::filesystem::path log_path_;
  Clock clock_;
  mutable std::mutex mutex_;
  int log_fd_ = -1;
  std::map<std::string, SessionState> sessions_;
  std::map<std::string, std::pair<std::size_t, int>> tokens_;
  std::vector<RatingEvent> events_;
};

// HTTP front end:
//   POST /sessions                 -> {session_id, progress, total}
//   GET  /sessions/{id}/next       -> {stimulus_token, image_url, progress,
//                                      total} | {done: true, ...}
//   POST /sessions/{id}/ratings    {stimulus_token, score}
//   GET  /report                   -> report JSON
//   GET  /stimuli/{token}          -> PNG from <image_root>/<method>/<id>.png
class StudyServer {
 public:
  StudyServer(StudyEngine& engine, std::filesystem::path image_root,
              std::filesystem::path static_root = {});
  ~StudyServer();

  // Returns the bound port, or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Serve();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pdbench::study

#endif  // PDBENCH_STUDY_H_
