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

#include "pdbench/hash.h"

#include <bit>
#include <cstdio>

#include "pdbench/error.h"

namespace pdbench {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMissingFile: return "missing-file";
    case ErrorKind::kDecode: return "decode";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kMissingData: return "missing-data";
    case ErrorKind::kDuplicate: return "duplicate";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kNotFound: return "not-found";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Fnv1a64& Fnv1a64::Update(std::span<const std::byte> bytes) {
  for (std::byte b : bytes) {
    state_ ^= static_cast<std::uint64_t>(b);
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fnv1a64& Fnv1a64::Update(std::string_view text) {
  return Update(std::as_bytes(std::span(text.data(), text.size())));
}

Fnv1a64& Fnv1a64::Update(std::uint64_t value) {
  std::byte buf[8];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<std::byte>((value >> (8 * i)) & 0xff);
  }
  return Update(std::span<const std::byte>(buf, 8));
}

Fnv1a64& Fnv1a64::Update(double value) {
  return Update(std::bit_cast<std::uint64_t>(value));
}

std::string Fnv1a64::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(state_));
  return buf;
}

std::string HexDigest(std::string_view text) {
  return Fnv1a64().Update(text).hex();
}

}  // namespace pdbench
