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

#include <csignal>
#include <ostream>
#include <set>

#include "internal.h"
#include "pdbench/cli.h"
#include "pdbench/csv.h"
#include "pdbench/study.h"

namespace pdbench::cli {

void RunStudyPlan(const StudyPlanConfig& config, std::ostream& out) {
  if (config.plan_out.empty()) throw ValidationError("--out is required");
  study::PlanOptions options;
  options.methods = config.methods;
  options.images = config.images;
  options.raters = config.raters;
  options.images_per_rater = config.images_per_rater;
  options.seed = config.seed;
  if (!config.image_root.empty()) {
    RequireDirectory(config.image_root, "--image-root");
    if (options.methods.empty()) {
      options.methods = Subdirectories(config.image_root);
    }
    if (options.images.empty() && !options.methods.empty()) {
      // Images every method provides.
      std::vector<std::string> common = PngStems(config.image_root / options.methods[0]);
      for (std::size_t m = 1; m < options.methods.size(); ++m) {
        const auto stems = PngStems(config.image_root / options.methods[m]);
        const std::set<std::string> have(stems.begin(), stems.end());
        std::erase_if(common, [&](const auto& s) { return !have.contains(s); });
      }
      options.images = std::move(common);
    }
  }
  if (options.methods.empty() || options.images.empty()) {
    throw ValidationError("a plan needs methods and images (--methods/--images or --image-root)");
  }
  const study::StudyPlan plan = study::BuildPlan(options);
  WriteTextFile(config.plan_out, study::PlanToJson(plan));
  if (!config.client_out.empty()) {
    WriteTextFile(config.client_out, study::ClientPlanJson(plan));
  }
  out << plan.raters.size() << " sessions x "
      << plan.raters.front().stimuli.size() << " stimuli -> "
      << config.plan_out.string() << "\n";
}

namespace {
study::StudyServer* g_server = nullptr;
void HandleSignal(int) {
  if (g_server) g_server->Stop();
}
}  // namespace

int RunStudyServe(const StudyServeConfig& config, std::ostream& out) {
  RequireFile(config.plan, "--plan");
  RequireDirectory(config.image_root, "--image-root");
  if (config.log.empty()) throw ValidationError("--log is required");
  if (!config.static_root.empty()) {
    RequireDirectory(config.static_root, "--static");
  }
  study::StudyEngine engine(study::PlanFromJson(ReadTextFile(config.plan)),
                            config.log);
  study::StudyServer server(engine, config.image_root, config.static_root);
  const int port = server.Bind(config.host, config.port);
  if (port < 0) {
    throw Error(ErrorKind::kIo, "cannot bind " + config.host + ":" +
                                    std::to_string(config.port));
  }
  out << "serving study on http://" << config.host << ":" << port << "\n"
      << std::flush;
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  const bool ok = server.Serve();
  g_server = nullptr;
  return ok ? kExitOk : kExitRuntime;
}

void RunStudyReport(const StudyReportConfig& config, std::ostream& out) {
  RequireFile(config.plan, "--plan");
  const study::StudyPlan plan = study::PlanFromJson(ReadTextFile(config.plan));
  std::vector<study::RatingEvent> events;
  std::error_code ec;
  if (!config.log.empty() && std::filesystem::exists(config.log, ec)) {
    events = study::ReadEventLog(config.log);
  }
  const std::string json = study::ReportToJson(study::BuildReport(plan, events));
  if (config.report_out.empty()) {
    out << json;
  } else {
    WriteTextFile(config.report_out, json);
  }
}

}  // namespace pdbench::cli
