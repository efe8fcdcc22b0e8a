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

#include "eua/instance_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "json_util.h"

namespace eua {

namespace {

using internal::Field;
using internal::Json;

// Largest magnitude accepted for a resource quantity; keeps scaled units
// well inside int64.
constexpr double kMaxQuantity = 1e12;

bool IsIntegral(double v) {
  const double r = std::round(v);
  return std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(r));
}

absl::StatusOr<std::vector<double>> NumberArray(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing array field '", key, "'"));
  }
  std::vector<double> out;
  for (const Json& v : j.at(key)) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(
          absl::StrCat("field '", key, "' must contain only numbers"));
    }
    const double d = v.get<double>();
    if (!std::isfinite(d) || std::abs(d) > kMaxQuantity) {
      return absl::InvalidArgumentError(
          absl::StrCat("field '", key, "' has an out-of-range value"));
    }
    out.push_back(d);
  }
  return out;
}

ResourceVector ToUnits(const std::vector<double>& values, int64_t scale) {
  std::vector<int64_t> units;
  units.reserve(values.size());
  for (double v : values) {
    units.push_back(std::llround(v * static_cast<double>(scale)));
  }
  return ResourceVector(std::move(units));
}

}  // namespace

namespace internal {

absl::StatusOr<Json> ParseJson(std::string_view text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("malformed JSON");
  return j;
}

Json ResourceToJson(const ResourceVector& v, int64_t scale) {
  Json arr = Json::array();
  for (int64_t u : v.units()) {
    if (u % scale == 0) {
      arr.push_back(u / scale);
    } else {
      arr.push_back(UnitsToDecimal(u, scale));
    }
  }
  return arr;
}

Json InstanceToJson(const Instance& instance) {
  Json j;
  j["dimension"] = instance.dimension;
  Json servers = Json::array();
  for (const EdgeServer& s : instance.servers) {
    servers.push_back({{"id", s.id.value()},
                       {"lat", s.location.latitude},
                       {"lon", s.location.longitude},
                       {"radius_m", s.coverage_radius_m},
                       {"capacity", ResourceToJson(s.capacity, instance.scale)}});
  }
  j["servers"] = std::move(servers);
  Json users = Json::array();
  for (const User& u : instance.users) {
    users.push_back({{"id", u.id.value()},
                     {"lat", u.location.latitude},
                     {"lon", u.location.longitude},
                     {"demand", ResourceToJson(u.demand, instance.scale)}});
  }
  j["users"] = std::move(users);
  return j;
}

Json AllocationToJson(const Instance& instance, const Allocation& alloc) {
  Json assignments = Json::array();
  for (const Assignment& a : alloc.assignments()) {
    assignments.push_back({{"user", a.user.value()}, {"server", a.server.value()}});
  }
  Json unallocated = Json::array();
  for (UserId u : alloc.Unallocated(instance.num_users())) {
    unallocated.push_back(u.value());
  }
  Json j;
  j["assignments"] = std::move(assignments);
  j["unallocated"] = std::move(unallocated);
  return j;
}

absl::StatusOr<Allocation> AllocationFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("assignments") ||
      !j.at("assignments").is_array()) {
    return absl::InvalidArgumentError("allocation needs an 'assignments' array");
  }
  Allocation alloc;
  for (const Json& entry : j.at("assignments")) {
    absl::StatusOr<int> user = Field<int>(entry, "user");
    if (!user.ok()) return user.status();
    absl::StatusOr<int> server = Field<int>(entry, "server");
    if (!server.ok()) return server.status();
    alloc.Assign(UserId(*user), ServerId(*server));
  }
  return alloc;
}

}  // namespace internal

double UnitsToDecimal(int64_t units, int64_t scale) {
  return static_cast<double>(units) / static_cast<double>(scale);
}

int64_t DecimalScaleFor(std::span<const double> values) {
  int64_t scale = 1;
  for (double v : values) {
    int64_t needed = 1;
    while (needed < kMaxScale && !IsIntegral(v * static_cast<double>(needed))) {
      needed *= 10;
    }
    scale = std::max(scale, needed);
  }
  return scale;
}

absl::StatusOr<Instance> ParseInstanceJson(std::string_view text) {
  absl::StatusOr<Json> parsed = internal::ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const Json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("instance must be an object");

  Instance instance;
  absl::StatusOr<int> dimension = Field<int>(j, "dimension");
  if (!dimension.ok()) return dimension.status();
  instance.dimension = *dimension;
  if (!j.contains("servers") || !j.at("servers").is_array() ||
      !j.contains("users") || !j.at("users").is_array()) {
    return absl::InvalidArgumentError("instance needs 'servers' and 'users' arrays");
  }

  struct RawServer {
    int id;
    GeoPoint location;
    double radius;
    std::vector<double> capacity;
  };
  struct RawUser {
    int id;
    GeoPoint location;
    std::vector<double> demand;
  };
  std::vector<RawServer> raw_servers;
  std::vector<RawUser> raw_users;
  std::vector<double> all_quantities;

  for (const Json& s : j.at("servers")) {
    RawServer r;
    auto id = Field<int>(s, "id");
    auto lat = Field<double>(s, "lat");
    auto lon = Field<double>(s, "lon");
    auto radius = Field<double>(s, "radius_m");
    for (const absl::Status& st :
         {id.status(), lat.status(), lon.status(), radius.status()}) {
      if (!st.ok()) return absl::InvalidArgumentError(absl::StrCat("server: ", st.message()));
    }
    auto capacity = NumberArray(s, "capacity");
    if (!capacity.ok()) return capacity.status();
    r.id = *id;
    r.location = {*lat, *lon};
    r.radius = *radius;
    r.capacity = std::move(*capacity);
    all_quantities.insert(all_quantities.end(), r.capacity.begin(), r.capacity.end());
    raw_servers.push_back(std::move(r));
  }
  for (const Json& u : j.at("users")) {
    RawUser r;
    auto id = Field<int>(u, "id");
    auto lat = Field<double>(u, "lat");
    auto lon = Field<double>(u, "lon");
    for (const absl::Status& st : {id.status(), lat.status(), lon.status()}) {
      if (!st.ok()) return absl::InvalidArgumentError(absl::StrCat("user: ", st.message()));
    }
    auto demand = NumberArray(u, "demand");
    if (!demand.ok()) return demand.status();
    r.id = *id;
    r.location = {*lat, *lon};
    r.demand = std::move(*demand);
    all_quantities.insert(all_quantities.end(), r.demand.begin(), r.demand.end());
    raw_users.push_back(std::move(r));
  }

  instance.scale = DecimalScaleFor(all_quantities);
  std::sort(raw_servers.begin(), raw_servers.end(),
            [](const RawServer& a, const RawServer& b) { return a.id < b.id; });
  std::sort(raw_users.begin(), raw_users.end(),
            [](const RawUser& a, const RawUser& b) { return a.id < b.id; });
  for (const RawServer& r : raw_servers) {
    instance.servers.push_back(EdgeServer{ServerId(r.id), r.location, r.radius,
                                          ToUnits(r.capacity, instance.scale)});
  }
  for (const RawUser& r : raw_users) {
    instance.users.push_back(
        User{UserId(r.id), r.location, ToUnits(r.demand, instance.scale)});
  }
  if (absl::Status st = ValidateInstance(instance); !st.ok()) return st;
  return instance;
}

std::string SerializeInstanceJson(const Instance& instance) {
  return internal::InstanceToJson(instance).dump(2) + "\n";
}

absl::StatusOr<Allocation> ParseAllocationJson(std::string_view text) {
  absl::StatusOr<Json> parsed = internal::ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  return internal::AllocationFromJson(*parsed);
}

std::string SerializeAllocationJson(const Instance& instance,
                                    const Allocation& alloc) {
  return internal::AllocationToJson(instance, alloc).dump(2) + "\n";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFileAtomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::UnavailableError(absl::StrCat("cannot write '", tmp, "'"));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      return absl::UnavailableError(absl::StrCat("write to '", tmp, "' failed"));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    return absl::UnavailableError(
        absl::StrCat("cannot rename '", tmp, "' to '", path, "': ", ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<Instance> LoadInstance(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<Instance> instance = ParseInstanceJson(*text);
  if (!instance.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", instance.status().message()));
  }
  return instance;
}

}  // namespace eua
