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

// Domain types for edge user allocation: resource vectors, servers, users,
// instances and (partial) user-to-server allocations.
//
// All resource quantities are stored as exact integers in "scaled units": an
// instance carries a power-of-ten scale factor and a quantity q read from a
// file is held as round(q * scale). Every capacity check is therefore an exact
// integer comparison.

#ifndef EUA_TYPES_H_
#define EUA_TYPES_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <vector>

#include "absl/status/status.h"

namespace eua {

// Strongly typed 1-based identifier. Servers and users use distinct tags so
// that they cannot be mixed up accidentally.
template <typename Tag>
class StrongId {
 public:
  constexpr StrongId() = default;
  constexpr explicit StrongId(int value) : value_(value) {}
  constexpr int value() const { return value_; }
  // Zero-based position in the instance's server or user list.
  constexpr int index() const { return value_ - 1; }
  static constexpr StrongId FromIndex(int index) { return StrongId(index + 1); }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
  friend std::ostream& operator<<(std::ostream& os, StrongId id) {
    return os << id.value_;
  }

 private:
  int value_ = 0;
};

struct ServerTag {};
struct UserTag {};
using ServerId = StrongId<ServerTag>;
using UserId = StrongId<UserTag>;

// d-dimensional non-negative resource quantity in scaled integer units.
class ResourceVector {
 public:
  ResourceVector() = default;
  explicit ResourceVector(std::vector<int64_t> units)
      : units_(std::move(units)) {}
  static ResourceVector Zero(int dimension) {
    return ResourceVector(std::vector<int64_t>(dimension, 0));
  }

  int dimension() const { return static_cast<int>(units_.size()); }
  int64_t operator[](int k) const { return units_[k]; }
  int64_t& operator[](int k) { return units_[k]; }
  std::span<const int64_t> units() const { return units_; }

  bool AllNonNegative() const;
  bool AnyPositive() const;
  // Componentwise `*this <= capacity`.
  bool FitsWithin(const ResourceVector& capacity) const;

  ResourceVector& operator+=(const ResourceVector& other);
  ResourceVector& operator-=(const ResourceVector& other);
  friend bool operator==(const ResourceVector&,
                         const ResourceVector&) = default;

 private:
  std::vector<int64_t> units_;
};

struct GeoPoint {
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]

  bool IsValid() const;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct EdgeServer {
  ServerId id;
  GeoPoint location;
  double coverage_radius_m = 0.0;
  ResourceVector capacity;  // remaining capacity
};

struct User {
  UserId id;
  GeoPoint location;
  ResourceVector demand;
};

struct Instance {
  int dimension = 0;
  // Scaled units per resource unit; a power of ten in [1, 10^6].
  int64_t scale = 1;
  std::vector<EdgeServer> servers;  // servers[i].id == i + 1
  std::vector<User> users;          // users[j].id == j + 1

  int num_servers() const { return static_cast<int>(servers.size()); }
  int num_users() const { return static_cast<int>(users.size()); }
  const EdgeServer& server(ServerId id) const { return servers[id.index()]; }
  const User& user(UserId id) const { return users[id.index()]; }
  bool HasServer(ServerId id) const {
    return id.value() >= 1 && id.value() <= num_servers();
  }
  bool HasUser(UserId id) const {
    return id.value() >= 1 && id.value() <= num_users();
  }
};

// Checks every structural invariant of an instance (dimensions, id
// contiguity, coordinate ranges, radii, non-negative capacities and non-zero
// demands). Returns InvalidArgument describing the first problem found.
absl::Status ValidateInstance(const Instance& instance);

struct Assignment {
  UserId user;
  ServerId server;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// Partial user -> server map. Users absent from the map are served by the
// central cloud. Entries are kept sorted by (user, server). Duplicate users
// can be represented so that malformed allocation files stay inspectable;
// ValidateAllocation reports them.
class Allocation {
 public:
  Allocation() = default;

  void Assign(UserId user, ServerId server);
  void Unassign(UserId user);

  std::span<const Assignment> assignments() const { return entries_; }
  // Number of (user, server) entries.
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  std::optional<ServerId> ServerOf(UserId user) const;
  std::set<ServerId> HiredServers() const;
  // Users of the instance that have no entry, ascending.
  std::vector<UserId> Unallocated(int num_users) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<Assignment> entries_;
};

}  // namespace eua

#endif  // EUA_TYPES_H_
