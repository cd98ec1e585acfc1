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

#ifndef PDBENCH_ERROR_H_
#define PDBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace pdbench {

// Broad failure classes. Callers that need to distinguish e.g. a missing
// file from an undecodable one switch on this rather than on message text.
enum class ErrorKind {
  kMissingFile,
  kDecode,
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerateInput,
  kMissingData,
  kDuplicate,
  kParse,
  kNotFound,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pdbench

#endif  // PDBENCH_ERROR_H_
