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

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "pdbench/error.h"
#include "pdbench/study.h"

namespace pdbench::study {
namespace {

std::int64_t WallClockMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

StudyEngine::StudyEngine(StudyPlan plan, std::filesystem::path log_path,
                         Clock clock)
    : plan_(std::move(plan)),
      log_path_(std::move(log_path)),
      clock_(clock ? std::move(clock) : Clock(WallClockMs)) {
  for (std::size_t r = 0; r < plan_.raters.size(); ++r) {
    const auto& rater = plan_.raters[r];
    SessionState state;
    state.rater = r;
    state.rated.assign(rater.stimuli.size(), false);
    sessions_.emplace(rater.session_id, std::move(state));
    for (std::size_t i = 0; i < rater.stimuli.size(); ++i) {
      tokens_[rater.stimuli[i].token] = {r, static_cast<int>(i)};
    }
  }
  std::error_code ec;
  if (std::filesystem::exists(log_path_, ec)) {
    for (const auto& e : ReadEventLog(log_path_)) {
      auto it = sessions_.find(e.session_id);
      if (it == sessions_.end() || e.stimulus_index < 0 ||
          e.stimulus_index >= static_cast<int>(it->second.rated.size())) {
        throw Error(ErrorKind::kNotFound,
                    log_path_.string() + " holds events for another plan");
      }
      auto& state = it->second;
      state.claimed = true;
      if (state.rated[e.stimulus_index]) continue;
      state.rated[e.stimulus_index] = true;
      ++state.progress;
      events_.push_back(e);
    }
  }
  if (log_path_.has_parent_path()) {
    std::filesystem::create_directories(log_path_.parent_path());
  }
  log_fd_ = ::open(log_path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC,
                   0644);
  if (log_fd_ < 0) {
    throw Error(ErrorKind::kIo, "cannot open event log " + log_path_.string() +
                                    ": " + std::strerror(errno));
  }
}

StudyEngine::~StudyEngine() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

StudyEngine::SessionState& StudyEngine::FindSession(
    const std::string& session_id) {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::kNotFound, "unknown session " + session_id);
  }
  return it->second;
}

const StudyEngine::SessionState& StudyEngine::FindSession(
    const std::string& session_id) const {
  return const_cast<StudyEngine*>(this)->FindSession(session_id);
}

std::string StudyEngine::CreateSession(
    const std::optional<std::string>& resume_id) {
  std::lock_guard lock(mutex_);
  if (resume_id) {
    auto& state = FindSession(*resume_id);
    state.claimed = true;
    return *resume_id;
  }
  for (const auto& rater : plan_.raters) {
    auto& state = sessions_.at(rater.session_id);
    if (!state.claimed) {
      state.claimed = true;
      return rater.session_id;
    }
  }
  throw Error(ErrorKind::kNotFound, "every rater slot is already taken");
}

NextItem StudyEngine::Next(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  const auto& state = FindSession(session_id);
  const auto& stimuli = plan_.raters[state.rater].stimuli;
  NextItem item;
  item.progress = state.progress;
  item.total = static_cast<int>(stimuli.size());
  if (state.progress >= item.total) {
    item.done = true;
    return item;
  }
  // Ratings are accepted in order, so the first unrated one is at progress.
  item.stimulus_index = state.progress;
  item.token = stimuli[state.progress].token;
  item.image_url = "/stimuli/" + item.token;
  return item;
}

RatingEvent StudyEngine::Record(const std::string& session_id,
                                const std::string& token, int score) {
  if (score < kMinScore || score > kMaxScore) {
    throw Error(ErrorKind::kInvalidArgument,
                "score must be between 1 and 4, got " + std::to_string(score));
  }
  std::lock_guard lock(mutex_);
  auto& state = FindSession(session_id);
  auto it = tokens_.find(token);
  if (it == tokens_.end() || it->second.first != state.rater) {
    throw Error(ErrorKind::kInvalidArgument,
                "stimulus token does not belong to session " + session_id);
  }
  const int index = it->second.second;
  if (state.rated[index]) {
    throw Error(ErrorKind::kDuplicate,
                "stimulus " + std::to_string(index) + " was already rated");
  }
  if (index != state.progress) {
    throw Error(ErrorKind::kInvalidArgument,
                "stimulus token is not the session's current stimulus");
  }
  RatingEvent event{session_id, index, score, clock_()};
  Append(event);
  state.rated[index] = true;
  ++state.progress;
  state.claimed = true;
  events_.push_back(event);
  return event;
}

void StudyEngine::Append(const RatingEvent& event) {
  const std::string line = EventToJsonLine(event);
  // One write() per line on an O_APPEND descriptor keeps lines whole.
  const ssize_t written = ::write(log_fd_, line.data(), line.size());
  if (written != static_cast<ssize_t>(line.size())) {
    throw Error(ErrorKind::kIo, "event log append failed: " +
                                    std::string(std::strerror(errno)));
  }
  ::fdatasync(log_fd_);
}

std::optional<StudyEngine::ResolvedStimulus> StudyEngine::Resolve(
    const std::string& token) const {
  auto it = tokens_.find(token);
  if (it == tokens_.end()) return std::nullopt;
  const auto& s = plan_.raters[it->second.first].stimuli[it->second.second];
  return ResolvedStimulus{s.method, s.image_id};
}

std::vector<RatingEvent> StudyEngine::Events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

StudyReport StudyEngine::Report() const {
  return BuildReport(plan_, Events());
}

}  // namespace pdbench::study
