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

#include "httplib.h"
#include "json.hpp"
#include "pdbench/csv.h"
#include "pdbench/error.h"
#include "pdbench/study.h"

namespace pdbench::study {
namespace {

int StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotFound:
    case ErrorKind::kMissingFile: return 404;
    case ErrorKind::kDuplicate: return 409;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kParse: return 400;
    default: return 500;
  }
}

void Reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, const Error& e) {
  Reply(res, StatusFor(e.kind()),
        {{"error", ErrorKindName(e.kind())}, {"message", e.what()}});
}

nlohmann::json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  try {
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorKind::kParse, "body must be an object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("bad JSON body: ") + e.what());
  }
}

}  // namespace

struct StudyServer::Impl {
  StudyEngine& engine;
  std::filesystem::path image_root;
  httplib::Server server;

  Impl(StudyEngine& e, std::filesystem::path root)
      : engine(e), image_root(std::move(root)) {}

  template <typename Fn>
  static httplib::Server::Handler Guard(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      try {
        fn(req, res);
      } catch (const Error& e) {
        ReplyError(res, e);
      } catch (const std::exception& e) {
        Reply(res, 500, {{"error", "internal"}, {"message", e.what()}});
      }
    };
  }

  void Install() {
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server.Post("/sessions", Guard([this](const auto& req, auto& res) {
      const auto body = ParseBody(req);
      std::optional<std::string> resume;
      if (body.contains("session_id")) {
        if (!body["session_id"].is_string()) {
          throw Error(ErrorKind::kParse, "session_id must be a string");
        }
        resume = body["session_id"].template get<std::string>();
      }
      const std::string id = engine.CreateSession(resume);
      const NextItem next = engine.Next(id);
      Reply(res, 201,
            {{"session_id", id}, {"progress", next.progress},
             {"total", next.total}});
    }));

    server.Get(R"(/sessions/([^/]+)/next)",
               Guard([this](const auto& req, auto& res) {
                 const NextItem next = engine.Next(req.matches[1]);
                 nlohmann::json body = {{"progress", next.progress},
                                        {"total", next.total}};
                 if (next.done) {
                   body["done"] = true;
                 } else {
                   body["stimulus_token"] = next.token;
                   body["image_url"] = next.image_url;
                 }
                 Reply(res, 200, body);
               }));

    server.Post(R"(/sessions/([^/]+)/ratings)",
                Guard([this](const auto& req, auto& res) {
                  const auto body = ParseBody(req);
                  if (!body.contains("stimulus_token") ||
                      !body["stimulus_token"].is_string() ||
                      !body.contains("score") ||
                      !body["score"].is_number_integer()) {
                    throw Error(ErrorKind::kInvalidArgument,
                                "expected {stimulus_token: string, score: "
                                "integer}");
                  }
                  const RatingEvent event = engine.Record(
                      req.matches[1],
                      body["stimulus_token"].template get<std::string>(),
                      body["score"].template get<int>());
                  Reply(res, 200,
                        {{"session", event.session_id},
                         {"stim", event.stimulus_index},
                         {"score", event.score},
                         {"ts", event.timestamp_ms},
                         {"progress", event.stimulus_index + 1}});
                }));

    server.Get("/report", Guard([this](const auto&, auto& res) {
      res.set_content(ReportToJson(engine.Report()), "application/json");
    }));

    server.Get(R"(/stimuli/([0-9a-f]+))",
               Guard([this](const auto& req, auto& res) {
                 const auto stimulus = engine.Resolve(req.matches[1]);
                 if (!stimulus) {
                   throw Error(ErrorKind::kNotFound, "unknown stimulus");
                 }
                 const auto path = image_root / stimulus->method /
                                   (stimulus->image_id + ".png");
                 res.set_header("Cache-Control", "no-store");
                 res.set_content(ReadTextFile(path), "image/png");
               }));
  }
};

StudyServer::StudyServer(StudyEngine& engine, std::filesystem::path image_root,
                         std::filesystem::path static_root)
    : impl_(std::make_unique<Impl>(engine, std::move(image_root))) {
  impl_->Install();
  if (!static_root.empty()) {
    impl_->server.set_mount_point("/", static_root.string());
  }
}

StudyServer::~StudyServer() { Stop(); }

int StudyServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool StudyServer::Serve() { return impl_->server.listen_after_bind(); }

void StudyServer::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void StudyServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace pdbench::study
