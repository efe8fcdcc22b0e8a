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

// Experiment instance generation.
//
// Pipeline: server locations (CSV or synthetic, filtered to a region) ->
// coverage radii uniform in [450, 750] m -> users scattered uniformly in a
// small disk around anchor locations -> the M servers covering at least one
// user receive the total capacity (a percentage of the combined user
// workload) split by a truncated normal draw -> a random subset of
// availability% of those servers is kept.
//
// Each stage draws from its own stream derived from the configuration seed,
// so changing the availability or capacity percentage does not perturb the
// geometry.

#ifndef EUA_INSTANCE_GEN_H_
#define EUA_INSTANCE_GEN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "eua/random.h"
#include "eua/types.h"

namespace eua {

inline constexpr std::string_view kGeneratorVersion = "eua-gen/1";

struct BoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool Contains(const GeoPoint& p) const {
    return p.latitude >= lat_min && p.latitude <= lat_max &&
           p.longitude >= lon_min && p.longitude <= lon_max;
  }
  GeoPoint Clip(const GeoPoint& p) const;
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Melbourne central business district, about 2.0 km x 3.1 km.
inline constexpr BoundingBox kMelbourneCbd{-37.8230, -37.8050, 144.9450, 144.9800};
// Central quarter of kMelbourneCbd, about 1.0 km x 1.55 km. With a quarter of
// the servers it keeps the server density of the full district.
inline constexpr BoundingBox kMelbourneCbdCore{-37.8185, -37.8095, 144.95375, 144.97125};

// Where a set of locations comes from: a CSV file with LATITUDE/LONGITUDE
// columns, or `synthetic_count` points uniform in the region.
struct PointSource {
  std::optional<std::string> csv_path;
  int synthetic_count = 0;
  friend bool operator==(const PointSource&, const PointSource&) = default;
};

// How the normal capacity draws relate across dimensions. kShared draws one
// value per server and applies it to every dimension, so each server holds a
// proportional slice of the combined workload vector; kPerDimension draws
// every dimension independently.
enum class CapacityDraw { kShared, kPerDimension };

std::string_view CapacityDrawName(CapacityDraw draw);
std::optional<CapacityDraw> ParseCapacityDraw(std::string_view name);

struct GenConfig {
  BoundingBox region = kMelbourneCbd;
  int num_users = 64;
  PointSource servers{std::nullopt, 125};
  PointSource user_anchors{std::nullopt, 32};
  // Seed for synthetic server locations. Experiments fix it, and every
  // repetition sees the same base-station layout.
  std::optional<uint64_t> server_layout_seed;
  double radius_min_m = 450.0;
  double radius_max_m = 750.0;
  double user_scatter_m = 50.0;
  std::vector<double> demand_per_user{1.0, 1.0, 0.5, 4.0};
  int capacity_pct = 300;
  int server_availability_pct = 100;
  double capacity_spread = 0.2;  // coefficient of variation
  CapacityDraw capacity_draw = CapacityDraw::kShared;
  RandomSeed seed;

  absl::Status Validate() const;
  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

absl::StatusOr<GenConfig> ParseGenConfigJson(std::string_view text);
std::string SerializeGenConfigJson(const GenConfig& config);

// Reads a CSV whose header names LATITUDE and LONGITUDE columns (any case)
// and keeps the rows inside `region`, in file order.
absl::StatusOr<std::vector<GeoPoint>> LoadServersCsv(const std::string& path,
                                                     const BoundingBox& region);
absl::StatusOr<std::vector<GeoPoint>> ParseServersCsv(std::string_view text,
                                                      const BoundingBox& region);

// `n` users, each at a uniformly chosen anchor offset uniformly within a
// disk of `scatter_m` meters and clipped to `region`. Without anchors users
// are uniform in the region.
std::vector<GeoPoint> PlaceUsers(const BoundingBox& region, int n,
                                 const std::vector<GeoPoint>& anchors,
                                 double scatter_m, RandomSeed seed);

// Splits T_k = capacity_pct/100 * num_users * demand_k (in scaled units) over
// `num_servers` servers for every dimension k: normal draws with mean T_k/M
// and standard deviation spread * T_k/M (shared across dimensions or drawn
// per dimension, see CapacityDraw), negatives truncated to zero, then
// largest-remainder rescaled so the parts sum to T_k exactly. T_k must be an
// integer. Fails after 10 redraws that are all zero in some dimension.
absl::StatusOr<std::vector<ResourceVector>> AssignCapacities(
    int num_servers, int num_users, const ResourceVector& demand_per_user,
    int capacity_pct, double capacity_spread, CapacityDraw draw, RandomSeed seed);

struct GeneratedInstance {
  Instance instance;
  int covering_servers = 0;  // M, before availability subsetting
  std::string manifest_json;
};

absl::StatusOr<GeneratedInstance> Generate(const GenConfig& config);

}  // namespace eua

#endif  // EUA_INSTANCE_GEN_H_
