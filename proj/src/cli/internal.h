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

#ifndef PDBENCH_CLI_INTERNAL_H_
#define PDBENCH_CLI_INTERNAL_H_

#include <filesystem>
#include <string>
#include <vector>

namespace pdbench::cli {

// Sorted stems of the *.png files directly inside `dir`.
std::vector<std::string> PngStems(const std::filesystem::path& dir);
// Sorted names of the subdirectories of `dir`.
std::vector<std::string> Subdirectories(const std::filesystem::path& dir);

void RequireDirectory(const std::filesystem::path& dir, const char* what);
void RequireFile(const std::filesystem::path& file, const char* what);

// key=value lines in a fixed order, hashed into provenance.
class CanonicalConfig {
 public:
  CanonicalConfig& Add(const std::string& key, const std::string& value);
  CanonicalConfig& Add(const std::string& key, double value);
  CanonicalConfig& Add(const std::string& key, const std::vector<std::string>& values);
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

}  // namespace pdbench::cli

#endif  // PDBENCH_CLI_INTERNAL_H_
