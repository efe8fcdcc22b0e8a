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

#ifndef EUA_GEO_H_
#define EUA_GEO_H_

#include "eua/types.h"

namespace eua {

inline constexpr double kEarthRadiusMeters = 6371000.0;

// Great-circle (haversine) distance between two points, in meters.
double GeoDistanceMeters(const GeoPoint& a, const GeoPoint& b);

}  // namespace eua

#endif  // EUA_GEO_H_
