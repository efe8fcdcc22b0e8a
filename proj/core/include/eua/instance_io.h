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

// JSON file formats.
//
// Instance:
//   {"dimension": 4,
//    "servers": [{"id": 1, "lat": -37.81, "lon": 144.96, "radius_m": 500,
//                 "capacity": [7, 8, 4, 25]}, ...],
//    "users":   [{"id": 1, "lat": -37.81, "lon": 144.96,
//                 "demand": [1, 1, 0.5, 4]}, ...]}
//
// Allocation:
//   {"assignments": [{"user": 1, "server": 2}, ...], "unallocated": [3, 4]}
//
// Resource quantities are decimal numbers. On load they are converted to
// exact integers using the smallest power of ten (at most 10^6) that clears
// every fractional digit in the file.

#ifndef EUA_INSTANCE_IO_H_
#define EUA_INSTANCE_IO_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "eua/types.h"

namespace eua {

inline constexpr int64_t kMaxScale = 1000000;

// Smallest power of ten in [1, kMaxScale] such that every value times it is
// an integer (to within binary floating-point round-off). Values needing more
// than six fractional digits are rounded at kMaxScale.
int64_t DecimalScaleFor(std::span<const double> values);

absl::StatusOr<Instance> ParseInstanceJson(std::string_view text);
std::string SerializeInstanceJson(const Instance& instance);

absl::StatusOr<Allocation> ParseAllocationJson(std::string_view text);
std::string SerializeAllocationJson(const Instance& instance,
                                    const Allocation& alloc);

// Quantity in scaled units rendered as a decimal (integral values print
// without a fractional part).
double UnitsToDecimal(int64_t units, int64_t scale);

absl::StatusOr<std::string> ReadFile(const std::string& path);
// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
absl::Status WriteFileAtomic(const std::string& path, std::string_view contents);

absl::StatusOr<Instance> LoadInstance(const std::string& path);

}  // namespace eua

#endif  // EUA_INSTANCE_IO_H_
