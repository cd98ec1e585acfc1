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

#include "internal.h"
#include "json.hpp"
#include "pdbench/cli.h"
#include "pdbench/csv.h"
#include "pdbench/hash.h"

namespace pdbench::cli {

std::string ProvenanceJson(const std::string& command,
                           const std::string& canonical_config,
                           std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["tool"] = "pdbench";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config_hash"] = HexDigest(canonical_config);
  j["seed"] = seed;
  return j.dump();
}

std::string ProvenanceCsvComment(const std::string& command,
                                 const std::string& canonical_config,
                                 std::uint64_t seed) {
  return "# pdbench " + std::string(kToolVersion) + " " + command +
         " config=" + HexDigest(canonical_config) +
         " seed=" + std::to_string(seed) + "\n";
}

std::vector<std::string> PngStems(const std::filesystem::path& dir) {
  std::vector<std::string> stems;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      stems.push_back(entry.path().stem().string());
    }
  }
  std::sort(stems.begin(), stems.end());
  return stems;
}

std::vector<std::string> Subdirectories(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory()) names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

void RequireDirectory(const std::filesystem::path& dir, const char* what) {
  std::error_code ec;
  if (dir.empty() || !std::filesystem::is_directory(dir, ec)) {
    throw ValidationError(std::string(what) + " is not a directory: '" +
                          dir.string() + "'");
  }
}

void RequireFile(const std::filesystem::path& file, const char* what) {
  std::error_code ec;
  if (file.empty() || !std::filesystem::is_regular_file(file, ec)) {
    throw ValidationError(std::string(what) + " does not exist: '" +
                          file.string() + "'");
  }
}

CanonicalConfig& CanonicalConfig::Add(const std::string& key,
                                      const std::string& value) {
  text_ += key + "=" + value + "\n";
  return *this;
}

CanonicalConfig& CanonicalConfig::Add(const std::string& key, double value) {
  return Add(key, FormatDouble(value));
}

CanonicalConfig& CanonicalConfig::Add(const std::string& key,
                                      const std::vector<std::string>& values) {
  std::string joined;
  for (const auto& v : values) joined += (joined.empty() ? "" : ",") + v;
  return Add(key, joined);
}

}  // namespace pdbench::cli
