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

#include "eua/instance_gen.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "eua/geo.h"
#include "eua/instance_io.h"
#include "json_util.h"
#include "string_compat.h"

namespace eua {

namespace {

using internal::Json;

// Stream salts; one independent generator per pipeline stage.
enum Stream : uint64_t {
  kServerLayout = 1,
  kRadii = 2,
  kAnchors = 3,
  kUsers = 4,
  kCapacities = 5,
  kAvailability = 6,
};

constexpr int kMaxCoverageRedraws = 100;
constexpr int kMaxCapacityRedraws = 10;
constexpr double kMetersPerDegreeLatitude =
    kEarthRadiusMeters * std::numbers::pi / 180.0;

GeoPoint UniformInRegion(const BoundingBox& region, Rng& rng) {
  const double lat = rng.Uniform(region.lat_min, region.lat_max);
  const double lon = rng.Uniform(region.lon_min, region.lon_max);
  return {lat, lon};
}

// Draws user locations one at a time; each draw consumes a fixed number of
// random values.
class UserSampler {
 public:
  UserSampler(const BoundingBox& region, const std::vector<GeoPoint>& anchors,
              double scatter_m, RandomSeed seed)
      : region_(region), anchors_(anchors), scatter_m_(scatter_m), rng_(seed) {}

  GeoPoint Next() {
    if (anchors_.empty()) return UniformInRegion(region_, rng_);
    const GeoPoint& anchor = anchors_[rng_.UniformIndex(anchors_.size())];
    const double r = scatter_m_ * std::sqrt(rng_.UniformUnit());
    const double theta = 2.0 * std::numbers::pi * rng_.UniformUnit();
    const double dlat = r * std::sin(theta) / kMetersPerDegreeLatitude;
    const double dlon = r * std::cos(theta) /
                        (kMetersPerDegreeLatitude *
                         std::cos(anchor.latitude * std::numbers::pi / 180.0));
    return region_.Clip({anchor.latitude + dlat, anchor.longitude + dlon});
  }

 private:
  const BoundingBox& region_;
  const std::vector<GeoPoint>& anchors_;
  const double scatter_m_;
  Rng rng_;
};

absl::StatusOr<std::vector<GeoPoint>> ResolvePoints(const PointSource& source,
                                                    const BoundingBox& region,
                                                    RandomSeed seed) {
  if (source.csv_path) return LoadServersCsv(*source.csv_path, region);
  Rng rng(seed);
  std::vector<GeoPoint> points;
  points.reserve(source.synthetic_count);
  for (int i = 0; i < source.synthetic_count; ++i) {
    points.push_back(UniformInRegion(region, rng));
  }
  return points;
}

Json PointSourceToJson(const PointSource& s) {
  Json j;
  if (s.csv_path) {
    j["csv"] = *s.csv_path;
  } else {
    j["synthetic_count"] = s.synthetic_count;
  }
  return j;
}

absl::StatusOr<PointSource> PointSourceFromJson(const Json& j, const char* key) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be an object"));
  }
  PointSource s;
  if (j.contains("csv")) {
    auto path = internal::Field<std::string>(j, "csv");
    if (!path.ok()) return path.status();
    s.csv_path = *path;
    s.synthetic_count = 0;
    return s;
  }
  auto count = internal::Field<int>(j, "synthetic_count");
  if (!count.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' needs 'csv' or 'synthetic_count'"));
  }
  s.synthetic_count = *count;
  return s;
}

absl::string_view StripQuotes(absl::string_view field) {
  field = absl::StripAsciiWhitespace(field);
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
    field = field.substr(1, field.size() - 2);
  }
  return field;
}

}  // namespace

std::string_view CapacityDrawName(CapacityDraw draw) {
  return draw == CapacityDraw::kShared ? "shared" : "per_dimension";
}

std::optional<CapacityDraw> ParseCapacityDraw(std::string_view name) {
  if (name == "shared") return CapacityDraw::kShared;
  if (name == "per_dimension") return CapacityDraw::kPerDimension;
  return std::nullopt;
}

GeoPoint BoundingBox::Clip(const GeoPoint& p) const {
  return {std::clamp(p.latitude, lat_min, lat_max),
          std::clamp(p.longitude, lon_min, lon_max)};
}

absl::Status GenConfig::Validate() const {
  if (!(region.lat_min <= region.lat_max) || !(region.lon_min <= region.lon_max) ||
      !GeoPoint{region.lat_min, region.lon_min}.IsValid() ||
      !GeoPoint{region.lat_max, region.lon_max}.IsValid()) {
    return absl::InvalidArgumentError("region bounds are invalid");
  }
  if (num_users < 1) return absl::InvalidArgumentError("num_users must be >= 1");
  if (!servers.csv_path && servers.synthetic_count < 1) {
    return absl::InvalidArgumentError("synthetic server count must be >= 1");
  }
  if (!user_anchors.csv_path && user_anchors.synthetic_count < 0) {
    return absl::InvalidArgumentError("anchor count must be >= 0");
  }
  if (!(radius_min_m > 0.0) || !(radius_min_m <= radius_max_m)) {
    return absl::InvalidArgumentError("radius range must satisfy 0 < lo <= hi");
  }
  if (!(user_scatter_m >= 0.0)) {
    return absl::InvalidArgumentError("user_scatter_m must be >= 0");
  }
  if (demand_per_user.empty()) {
    return absl::InvalidArgumentError("demand_per_user must be non-empty");
  }
  bool positive = false;
  for (double v : demand_per_user) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      return absl::InvalidArgumentError("demand_per_user must be non-negative");
    }
    positive |= v > 0.0;
  }
  if (!positive) {
    return absl::InvalidArgumentError("demand_per_user needs a positive component");
  }
  if (capacity_pct <= 0) return absl::InvalidArgumentError("capacity_pct must be positive");
  if (server_availability_pct <= 0 || server_availability_pct > 100) {
    return absl::InvalidArgumentError("server_availability_pct must be in (0, 100]");
  }
  if (!(capacity_spread >= 0.0)) {
    return absl::InvalidArgumentError("capacity_spread must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<GenConfig> ParseGenConfigJson(std::string_view text) {
  absl::StatusOr<Json> parsed = internal::ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const Json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("config must be an object");
  GenConfig c;
  try {
    if (j.contains("region")) {
      const Json& r = j.at("region");
      c.region = {r.at("lat_min").get<double>(), r.at("lat_max").get<double>(),
                  r.at("lon_min").get<double>(), r.at("lon_max").get<double>()};
    }
    if (j.contains("num_users")) c.num_users = j.at("num_users").get<int>();
    if (j.contains("servers")) {
      auto s = PointSourceFromJson(j.at("servers"), "servers");
      if (!s.ok()) return s.status();
      c.servers = *s;
    }
    if (j.contains("user_anchors")) {
      auto s = PointSourceFromJson(j.at("user_anchors"), "user_anchors");
      if (!s.ok()) return s.status();
      c.user_anchors = *s;
    }
    if (j.contains("server_layout_seed") && !j.at("server_layout_seed").is_null()) {
      c.server_layout_seed = j.at("server_layout_seed").get<uint64_t>();
    }
    if (j.contains("radius_range_m")) {
      const Json& r = j.at("radius_range_m");
      if (!r.is_array() || r.size() != 2) {
        return absl::InvalidArgumentError("radius_range_m must be [lo, hi]");
      }
      c.radius_min_m = r[0].get<double>();
      c.radius_max_m = r[1].get<double>();
    }
    if (j.contains("user_scatter_m")) c.user_scatter_m = j.at("user_scatter_m").get<double>();
    if (j.contains("demand_per_user")) {
      c.demand_per_user = j.at("demand_per_user").get<std::vector<double>>();
    }
    if (j.contains("capacity_pct")) c.capacity_pct = j.at("capacity_pct").get<int>();
    if (j.contains("server_availability_pct")) {
      c.server_availability_pct = j.at("server_availability_pct").get<int>();
    }
    if (j.contains("capacity_spread")) c.capacity_spread = j.at("capacity_spread").get<double>();
    if (j.contains("capacity_draw")) {
      std::optional<CapacityDraw> draw = ParseCapacityDraw(j.at("capacity_draw").get<std::string>());
      if (!draw) return absl::InvalidArgumentError("capacity_draw must be 'shared' or 'per_dimension'");
      c.capacity_draw = *draw;
    }
    if (j.contains("seed")) c.seed = RandomSeed{j.at("seed").get<uint64_t>()};
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad generator config: ", e.what()));
  }
  if (absl::Status st = c.Validate(); !st.ok()) return st;
  return c;
}

std::string SerializeGenConfigJson(const GenConfig& c) {
  Json j;
  j["region"] = {{"lat_min", c.region.lat_min},
                 {"lat_max", c.region.lat_max},
                 {"lon_min", c.region.lon_min},
                 {"lon_max", c.region.lon_max}};
  j["num_users"] = c.num_users;
  j["servers"] = PointSourceToJson(c.servers);
  j["server_layout_seed"] =
      c.server_layout_seed ? Json(*c.server_layout_seed) : Json(nullptr);
  j["user_anchors"] = PointSourceToJson(c.user_anchors);
  j["radius_range_m"] = {c.radius_min_m, c.radius_max_m};
  j["user_scatter_m"] = c.user_scatter_m;
  j["demand_per_user"] = c.demand_per_user;
  j["capacity_pct"] = c.capacity_pct;
  j["server_availability_pct"] = c.server_availability_pct;
  j["capacity_spread"] = c.capacity_spread;
  j["capacity_draw"] = std::string(CapacityDrawName(c.capacity_draw));
  j["seed"] = c.seed.value;
  return j.dump(2) + "\n";
}

absl::StatusOr<std::vector<GeoPoint>> ParseServersCsv(std::string_view text,
                                                      const BoundingBox& region) {
  std::vector<absl::string_view> lines = absl::StrSplit(internal::AsAbsl(text), '\n');
  int lat_col = -1;
  int lon_col = -1;
  size_t line_no = 0;
  // Header: first non-empty line.
  for (; line_no < lines.size(); ++line_no) {
    absl::string_view line = absl::StripTrailingAsciiWhitespace(lines[line_no]);
    if (line.empty()) continue;
    std::vector<absl::string_view> cols = absl::StrSplit(line, ',');
    for (size_t c = 0; c < cols.size(); ++c) {
      const std::string name = absl::AsciiStrToUpper(StripQuotes(cols[c]));
      if (name == "LATITUDE") lat_col = static_cast<int>(c);
      if (name == "LONGITUDE") lon_col = static_cast<int>(c);
    }
    ++line_no;
    break;
  }
  if (lat_col < 0 || lon_col < 0) {
    return absl::InvalidArgumentError(
        "server CSV header must name LATITUDE and LONGITUDE columns");
  }
  std::vector<GeoPoint> points;
  for (; line_no < lines.size(); ++line_no) {
    absl::string_view line = absl::StripTrailingAsciiWhitespace(lines[line_no]);
    if (line.empty()) continue;
    std::vector<absl::string_view> cols = absl::StrSplit(line, ',');
    const int needed = std::max(lat_col, lon_col);
    if (static_cast<int>(cols.size()) <= needed) {
      return absl::InvalidArgumentError(
          absl::StrCat("server CSV row ", line_no + 1, ": too few columns"));
    }
    double lat, lon;
    if (!absl::SimpleAtod(StripQuotes(cols[lat_col]), &lat) ||
        !absl::SimpleAtod(StripQuotes(cols[lon_col]), &lon)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "server CSV row ", line_no + 1, ": cannot parse coordinates"));
    }
    const GeoPoint p{lat, lon};
    if (!p.IsValid()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "server CSV row ", line_no + 1, ": coordinates out of range"));
    }
    if (region.Contains(p)) points.push_back(p);
  }
  return points;
}

absl::StatusOr<std::vector<GeoPoint>> LoadServersCsv(const std::string& path,
                                                     const BoundingBox& region) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<GeoPoint>> points = ParseServersCsv(*text, region);
  if (!points.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": ", points.status().message()));
  }
  return points;
}

std::vector<GeoPoint> PlaceUsers(const BoundingBox& region, int n,
                                 const std::vector<GeoPoint>& anchors,
                                 double scatter_m, RandomSeed seed) {
  UserSampler sampler(region, anchors, scatter_m, seed);
  std::vector<GeoPoint> users;
  users.reserve(n);
  for (int j = 0; j < n; ++j) users.push_back(sampler.Next());
  return users;
}

absl::StatusOr<std::vector<ResourceVector>> AssignCapacities(
    int num_servers, int num_users, const ResourceVector& demand_per_user,
    int capacity_pct, double capacity_spread, CapacityDraw draw, RandomSeed seed) {
  if (num_servers < 1) {
    return absl::FailedPreconditionError("capacity needs at least one covering server");
  }
  const int d = demand_per_user.dimension();
  std::vector<int64_t> total(d);
  for (int k = 0; k < d; ++k) {
    const int64_t numerator =
        static_cast<int64_t>(capacity_pct) * num_users * demand_per_user[k];
    if (numerator % 100 != 0) {
      return absl::InvalidArgumentError(
          "total capacity is not integral in scaled units; use a finer scale");
    }
    total[k] = numerator / 100;
  }

  for (int attempt = 0; attempt <= kMaxCapacityRedraws; ++attempt) {
    Rng rng(attempt == 0 ? seed : DeriveSeed(seed, static_cast<uint64_t>(attempt)));
    std::vector<ResourceVector> caps(num_servers, ResourceVector::Zero(d));
    bool degenerate = false;
    // Relative shares; the mean T_k/M cancels in the rescaling below.
    std::vector<double> share;
    auto draw_shares = [&] {
      share.assign(num_servers, 0.0);
      double sum = 0.0;
      for (int i = 0; i < num_servers; ++i) {
        share[i] = std::max(0.0, 1.0 + capacity_spread * rng.StandardNormal());
        sum += share[i];
      }
      return sum;
    };
    double sum = draw == CapacityDraw::kShared ? draw_shares() : 0.0;
    for (int k = 0; k < d; ++k) {
      if (total[k] == 0) continue;
      if (draw == CapacityDraw::kPerDimension) sum = draw_shares();
      if (sum <= 0.0) {
        degenerate = true;
        break;
      }
      // Largest-remainder rounding of total * draw / sum.
      std::vector<double> remainder(num_servers);
      int64_t assigned = 0;
      for (int i = 0; i < num_servers; ++i) {
        const double quota = static_cast<double>(total[k]) * share[i] / sum;
        const int64_t base = static_cast<int64_t>(std::floor(quota));
        caps[i][k] = base;
        remainder[i] = quota - static_cast<double>(base);
        assigned += base;
      }
      std::vector<int> order(num_servers);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return remainder[a] > remainder[b]; });
      int64_t left = total[k] - assigned;
      for (int pos = 0; left > 0; pos = (pos + 1) % num_servers, --left) {
        ++caps[order[pos]][k];
      }
      while (left < 0) {  // floating-point overshoot; take from the largest
        auto it = std::max_element(caps.begin(), caps.end(),
                                   [k](const ResourceVector& a, const ResourceVector& b) {
                                     return a[k] < b[k];
                                   });
        --(*it)[k];
        ++left;
      }
    }
    if (!degenerate) return caps;
  }
  return absl::InternalError(absl::StrCat("capacity draws were all zero after ",
                                          kMaxCapacityRedraws, " redraws"));
}

absl::StatusOr<GeneratedInstance> Generate(const GenConfig& config) {
  if (absl::Status st = config.Validate(); !st.ok()) return st;
  const RandomSeed seed = config.seed;

  const RandomSeed layout_seed =
      config.server_layout_seed ? DeriveSeed(RandomSeed{*config.server_layout_seed}, kServerLayout)
                                : DeriveSeed(seed, kServerLayout);
  absl::StatusOr<std::vector<GeoPoint>> server_points =
      ResolvePoints(config.servers, config.region, layout_seed);
  if (!server_points.ok()) return server_points.status();
  if (server_points->empty()) {
    return absl::FailedPreconditionError("no server locations inside the region");
  }
  Rng radius_rng(DeriveSeed(seed, kRadii));
  std::vector<double> radii;
  for (size_t i = 0; i < server_points->size(); ++i) {
    radii.push_back(radius_rng.Uniform(config.radius_min_m, config.radius_max_m));
  }

  absl::StatusOr<std::vector<GeoPoint>> anchors =
      ResolvePoints(config.user_anchors, config.region, DeriveSeed(seed, kAnchors));
  if (!anchors.ok()) return anchors.status();

  auto covered_by = [&](const GeoPoint& p, size_t i) {
    return GeoDistanceMeters((*server_points)[i], p) <= radii[i];
  };
  auto covered = [&](const GeoPoint& p) {
    for (size_t i = 0; i < server_points->size(); ++i) {
      if (covered_by(p, i)) return true;
    }
    return false;
  };

  // Users outside every coverage disk are redrawn: the experiment's users
  // all lie in the combined coverage of the servers.
  UserSampler sampler(config.region, *anchors, config.user_scatter_m,
                      DeriveSeed(seed, kUsers));
  std::vector<GeoPoint> users;
  for (int j = 0; j < config.num_users; ++j) {
    GeoPoint p = sampler.Next();
    for (int tries = 1; tries < kMaxCoverageRedraws && !covered(p); ++tries) {
      p = sampler.Next();
    }
    users.push_back(p);
  }

  std::vector<int> covering;
  for (size_t i = 0; i < server_points->size(); ++i) {
    for (const GeoPoint& u : users) {
      if (covered_by(u, i)) {
        covering.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  if (covering.empty()) {
    return absl::FailedPreconditionError("no server covers any generated user");
  }
  const int M = static_cast<int>(covering.size());

  const int64_t scale = std::min<int64_t>(DecimalScaleFor(config.demand_per_user) * 100,
                                          kMaxScale);
  std::vector<int64_t> demand_units;
  for (double v : config.demand_per_user) {
    demand_units.push_back(std::llround(v * static_cast<double>(scale)));
  }
  const ResourceVector demand(demand_units);
  absl::StatusOr<std::vector<ResourceVector>> capacities =
      AssignCapacities(M, config.num_users, demand, config.capacity_pct,
                       config.capacity_spread, config.capacity_draw,
                       DeriveSeed(seed, kCapacities));
  if (!capacities.ok()) return capacities.status();

  const int available = std::clamp<int>(
      static_cast<int>(std::llround(config.server_availability_pct * M / 100.0)), 1, M);
  std::vector<int> pick(M);
  std::iota(pick.begin(), pick.end(), 0);
  Rng availability_rng(DeriveSeed(seed, kAvailability));
  availability_rng.Shuffle(std::span<int>(pick));
  pick.resize(available);
  std::sort(pick.begin(), pick.end());

  GeneratedInstance out;
  out.covering_servers = M;
  Instance& inst = out.instance;
  inst.dimension = demand.dimension();
  inst.scale = scale;
  for (int p : pick) {
    const int i = covering[p];
    inst.servers.push_back(EdgeServer{ServerId::FromIndex(inst.num_servers()),
                                      (*server_points)[i], radii[i], (*capacities)[p]});
  }
  for (const GeoPoint& u : users) {
    inst.users.push_back(User{UserId::FromIndex(inst.num_users()), u, demand});
  }
  if (absl::Status st = ValidateInstance(inst); !st.ok()) return st;

  Json manifest;
  manifest["generator_version"] = std::string(kGeneratorVersion);
  manifest["seed"] = seed.value;
  manifest["config"] = Json::parse(SerializeGenConfigJson(config));
  manifest["covering_servers"] = M;
  manifest["available_servers"] = available;
  manifest["scale"] = scale;
  manifest["notes"] = Json::array(
      {"capacity per dimension ~ truncated Normal(T/M, (spread * T/M)^2), "
       "largest-remainder rescaled to sum to T",
       "capacity_draw 'shared' uses one draw per server for all dimensions",
       "capacity_spread is a modelling choice, not a measured value",
       "users outside every coverage disk are redrawn (up to 100 tries)"});
  out.manifest_json = manifest.dump(2) + "\n";
  return out;
}

}  // namespace eua
