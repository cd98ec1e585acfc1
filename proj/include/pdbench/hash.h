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

#ifndef PDBENCH_HASH_H_
#define PDBENCH_HASH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pdbench {

// 64-bit FNV-1a. Stable across platforms, used for fingerprints and opaque
// identifiers; not a cryptographic hash.
class Fnv1a64 {
 public:
  Fnv1a64& Update(std::span<const std::byte> bytes);
  Fnv1a64& Update(std::string_view text);
  Fnv1a64& Update(std::uint64_t value);
  Fnv1a64& Update(double value);

  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string HexDigest(std::string_view text);

}  // namespace pdbench

#endif  // PDBENCH_HASH_H_
