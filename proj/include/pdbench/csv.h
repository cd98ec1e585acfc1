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

#ifndef PDBENCH_CSV_H_
#define PDBENCH_CSV_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdbench {

// Minimal comma-separated table. Fields are unquoted identifiers and
// numbers; lines starting with '#' carry provenance and are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row
};

CsvTable ParseCsv(std::string_view text, const std::string& source_name);
CsvTable ReadCsv(const std::filesystem::path& path);

std::vector<std::string> SplitFields(std::string_view line, char sep = ',');

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);
std::string FormatFixed(double value, int decimals);

// Parses a finite double; nullopt on garbage, NaN or infinity.
std::optional<double> ParseFiniteDouble(std::string_view text);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace pdbench

#endif  // PDBENCH_CSV_H_
