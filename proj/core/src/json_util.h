// Copyright 2026 The EUA Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Private JSON helpers shared by the serializers. Not installed.

#ifndef EUA_SRC_JSON_UTIL_H_
#define EUA_SRC_JSON_UTIL_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "eua/types.h"
#include "json.hpp"

namespace eua::internal {

using Json = nlohmann::ordered_json;

Json ResourceToJson(const ResourceVector& v, int64_t scale);
Json InstanceToJson(const Instance& instance);
Json AllocationToJson(const Instance& instance, const Allocation& alloc);
absl::StatusOr<Allocation> AllocationFromJson(const Json& j);

absl::StatusOr<Json> ParseJson(std::string_view text);

// Reads `key` from object `j`, reporting a readable error when absent or of
// the wrong type.
template <typename T>
absl::StatusOr<T> Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    return absl::InvalidArgumentError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(std::string("field '") + key +
                                      "' has the wrong type: " + e.what());
  }
}

}  // namespace eua::internal

#endif  // EUA_SRC_JSON_UTIL_H_
