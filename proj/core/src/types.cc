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

#include "eua/types.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace eua {

bool ResourceVector::AllNonNegative() const {
  return std::all_of(units_.begin(), units_.end(),
                     [](int64_t v) { return v >= 0; });
}

bool ResourceVector::AnyPositive() const {
  return std::any_of(units_.begin(), units_.end(),
                     [](int64_t v) { return v > 0; });
}

bool ResourceVector::FitsWithin(const ResourceVector& capacity) const {
  for (int k = 0; k < dimension(); ++k) {
    if (units_[k] > capacity.units_[k]) return false;
  }
  return true;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
  for (int k = 0; k < dimension(); ++k) units_[k] += other.units_[k];
  return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& other) {
  for (int k = 0; k < dimension(); ++k) units_[k] -= other.units_[k];
  return *this;
}

bool GeoPoint::IsValid() const {
  return std::isfinite(latitude) && std::isfinite(longitude) &&
         latitude >= -90.0 && latitude <= 90.0 && longitude >= -180.0 &&
         longitude <= 180.0;
}

absl::Status ValidateInstance(const Instance& instance) {
  if (instance.dimension < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be >= 1, got ", instance.dimension));
  }
  if (instance.scale < 1) {
    return absl::InvalidArgumentError("scale must be positive");
  }
  for (int i = 0; i < instance.num_servers(); ++i) {
    const EdgeServer& s = instance.servers[i];
    if (s.id.value() != i + 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("server ids must be 1..m in order; position ", i + 1,
                       " has id ", s.id.value()));
    }
    if (!s.location.IsValid()) {
      return absl::InvalidArgumentError(
          absl::StrCat("server ", s.id.value(), " has invalid coordinates"));
    }
    if (!(s.coverage_radius_m > 0.0) || !std::isfinite(s.coverage_radius_m)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "server ", s.id.value(), " coverage radius must be positive"));
    }
    if (s.capacity.dimension() != instance.dimension) {
      return absl::InvalidArgumentError(absl::StrCat(
          "server ", s.id.value(), " capacity has length ",
          s.capacity.dimension(), ", expected ", instance.dimension));
    }
    if (!s.capacity.AllNonNegative()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "server ", s.id.value(), " has a negative capacity component"));
    }
  }
  for (int j = 0; j < instance.num_users(); ++j) {
    const User& u = instance.users[j];
    if (u.id.value() != j + 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ids must be 1..n in order; position ", j + 1,
                       " has id ", u.id.value()));
    }
    if (!u.location.IsValid()) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", u.id.value(), " has invalid coordinates"));
    }
    if (u.demand.dimension() != instance.dimension) {
      return absl::InvalidArgumentError(absl::StrCat(
          "user ", u.id.value(), " demand has length ", u.demand.dimension(),
          ", expected ", instance.dimension));
    }
    if (!u.demand.AllNonNegative() || !u.demand.AnyPositive()) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", u.id.value(),
                       " demand must be non-negative with a positive entry"));
    }
  }
  return absl::OkStatus();
}

void Allocation::Assign(UserId user, ServerId server) {
  const Assignment entry{user, server};
  entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), entry),
                  entry);
}

void Allocation::Unassign(UserId user) {
  std::erase_if(entries_, [user](const Assignment& a) { return a.user == user; });
}

std::optional<ServerId> Allocation::ServerOf(UserId user) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), user,
      [](const Assignment& a, UserId u) { return a.user < u; });
  if (it == entries_.end() || it->user != user) return std::nullopt;
  return it->server;
}

std::set<ServerId> Allocation::HiredServers() const {
  std::set<ServerId> hired;
  for (const Assignment& a : entries_) hired.insert(a.server);
  return hired;
}

std::vector<UserId> Allocation::Unallocated(int num_users) const {
  std::vector<UserId> out;
  size_t pos = 0;
  for (int j = 1; j <= num_users; ++j) {
    while (pos < entries_.size() && entries_[pos].user.value() < j) ++pos;
    if (pos == entries_.size() || entries_[pos].user.value() != j) {
      out.push_back(UserId(j));
    }
  }
  return out;
}

}  // namespace eua
