// SPDX-License-Identifier: Apache-2.0
//
// dpbound - capacity bounds for compound vector dirty paper channels
// Copyright (C) 2026 The dpbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

// Aligned worst-case interference families: whitened eigendirections of Q_s are
// steered into the signal subspace at full gain and split into Q_s-orthogonal
// groups of at most M0 coordinates each.

#include "dpbound/channel_model.hpp"
#include "dpbound/errors.hpp"
#include "dpbound/linalg.hpp"
#include "dpbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace dpbound {

/// Number of orthogonal groups ceil(m_s / M0).
constexpr int group_count(int m_s, int M0) { return (m_s + M0 - 1) / M0; }

/// Ordered groups of whitened state coordinates (0-based, ascending within a
/// group; coordinate k has the k-th largest eigenvalue of Q_s).
struct GroupPartition {
  std::vector<std::vector<int>> groups;

  friend bool operator==(const GroupPartition&, const GroupPartition&) = default;
  friend auto operator<=>(const GroupPartition&, const GroupPartition&) = default;
};

inline void check_partition(const GroupPartition& part, int m_s, int M0) {
  if (M0 < 1 || m_s < 1) throw Error(ErrorCode::PartitionMismatch, "m_s and M0 must be >= 1");
  const int n = group_count(m_s, M0);
  if (static_cast<int>(part.groups.size()) != n) {
    throw Error(ErrorCode::PartitionMismatch,
                "expected " + std::to_string(n) + " groups, got " + std::to_string(part.groups.size()));
  }
  const int last_size = m_s - M0 * (n - 1);
  std::vector<bool> seen(static_cast<std::size_t>(m_s), false);
  for (int i = 0; i < n; ++i) {
    const auto& g = part.groups[static_cast<std::size_t>(i)];
    const int want = (i + 1 < n) ? M0 : last_size;
    if (static_cast<int>(g.size()) != want) {
      throw Error(ErrorCode::PartitionMismatch, "group " + std::to_string(i) + " has the wrong size");
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
      const int k = g[j];
      if (k < 0 || k >= m_s || seen[static_cast<std::size_t>(k)]) {
        throw Error(ErrorCode::PartitionMismatch, "groups must be disjoint and cover 0..m_s-1");
      }
      if (j > 0 && g[j - 1] >= k) {
        throw Error(ErrorCode::PartitionMismatch, "coordinates within a group must be ascending");
      }
      seen[static_cast<std::size_t>(k)] = true;
    }
  }
}

struct AdversaryFamily {
  // m_r x m_s each. For a limit family (a_max = inf) these are the unit-gain
  // directions and the actual members are their unbounded scalings.
  std::vector<Mat> members;
  GroupPartition group_map;
  int M0 = 0;
  bool limit = false;
};

struct FeasibilityCertificate {
  double max_singular = 0.0;
  double max_cross_residual = 0.0;
  bool cap_ok = true;
  bool orthogonal = true;

  bool feasible() const { return cap_ok && orthogonal; }
};

/// Checks sigma_max(A_i) <= a_max and A_i Q_s A_j^H = 0 for i != j.
inline FeasibilityCertificate certify_family(const AdversaryFamily& fam, const ChannelModel& model,
                                             const Tolerances& tol = {}) {
  FeasibilityCertificate cert;
  for (const auto& a : fam.members) cert.max_singular = std::max(cert.max_singular, spectral_norm(a));
  if (!model.a_max().is_infinite() && !fam.limit) {
    cert.cap_ok = cert.max_singular <= model.a_max().value() * (1.0 + tol.singular_slack);
  }
  const double bound = tol.orthogonality * (1.0 + model.Q_s().norm());
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    for (std::size_t j = 0; j < fam.members.size(); ++j) {
      if (i == j) continue;
      const double r = (fam.members[i] * model.Q_s() * fam.members[j].adjoint()).norm();
      cert.max_cross_residual = std::max(cert.max_cross_residual, r);
    }
  }
  cert.orthogonal = cert.max_cross_residual <= bound;
  return cert;
}

/// A_i = U_g^H D_i S_i diag(v)^{-1/2} E^H, D_i = diag(a_max sqrt(v_k)) over the
/// group's coordinates. Coordinate j of a group (in descending-eigenvalue order)
/// goes to the j-th strongest signal direction, so U A_i Q_s A_i^H U^H =
/// diag(a_max^2 v_k, zero-padded to M0).
inline AdversaryFamily build_family(const ChannelModel& model, const SignalSubspace& sub,
                                    const WhitenedState& white, const GroupPartition& part) {
  const int m0 = sub.M0;
  const int m_s = model.m_s();
  if (m0 < 1) throw Error(ErrorCode::RankZeroSignal, "signal subspace is empty");
  if (sub.U.cols() != model.m_r() || white.v.size() != m_s) {
    throw Error(ErrorCode::PartitionMismatch, "subspace or whitening does not match the model");
  }
  check_partition(part, m_s, m0);
  if (group_count(m_s, m0) > m_s) {
    throw Error(ErrorCode::InfeasibleDimensions, "more groups than orthogonal state dimensions");
  }

  AdversaryFamily fam;
  fam.M0 = m0;
  fam.group_map = part;
  fam.limit = model.a_max().is_infinite();
  const double gain = fam.limit ? 1.0 : model.a_max().value();

  const Mat E_h = white.E.adjoint();
  for (const auto& group : part.groups) {
    const auto g = static_cast<Eigen::Index>(group.size());
    Mat S = Mat::Zero(g, m_s);
    Vec d(g);
    for (Eigen::Index j = 0; j < g; ++j) {
      const int k = group[static_cast<std::size_t>(j)];
      S(j, k) = 1.0;
      d(j) = gain * std::sqrt(white.v(k));
    }
    const Vec inv_sqrt_v = white.v.cwiseSqrt().cwiseInverse().cast<Complex>();
    Mat a = sub.U.topRows(g).adjoint() * d.asDiagonal() * S * inv_sqrt_v.asDiagonal() * E_h;
    fam.members.push_back(std::move(a));
  }
  return fam;
}

namespace detail {

inline void enumerate_rec(std::vector<int>& remaining, int m0, GroupPartition& current,
                          std::vector<GroupPartition>& out) {
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  const int take = std::min<int>(m0, static_cast<int>(remaining.size()));
  const int n = static_cast<int>(remaining.size());
  // Lexicographic k-combinations of `remaining` by index mask.
  std::vector<int> idx(static_cast<std::size_t>(take));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> group;
    std::vector<int> rest;
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
      if (p < idx.size() && idx[p] == i) {
        group.push_back(remaining[static_cast<std::size_t>(i)]);
        ++p;
      } else {
        rest.push_back(remaining[static_cast<std::size_t>(i)]);
      }
    }
    current.groups.push_back(group);
    enumerate_rec(rest, m0, current, out);
    current.groups.pop_back();

    int i = take - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - take + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < take; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline double partition_count(int m_s, int m0) {
  // m_s! / (M0!^(N-1) r!)
  const int n = group_count(m_s, m0);
  const int r = m_s - m0 * (n - 1);
  double lg = std::lgamma(m_s + 1.0) - (n - 1) * std::lgamma(m0 + 1.0) - std::lgamma(r + 1.0);
  return std::round(std::exp(lg));
}

inline GroupPartition chunked(const std::vector<int>& order, int m0) {
  GroupPartition p;
  for (std::size_t i = 0; i < order.size(); i += static_cast<std::size_t>(m0)) {
    const auto end = std::min(order.size(), i + static_cast<std::size_t>(m0));
    std::vector<int> g(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(end));
    std::sort(g.begin(), g.end());
    p.groups.push_back(std::move(g));
  }
  return p;
}

}  // namespace detail

inline constexpr int kDefaultPartitionBudget = 40320;  // 8!, exhaustive for m_s <= 8

/// All ordered partitions of 0..m_s-1 into ceil(m_s/M0) groups (sizes M0, ...,
/// M0, remainder) when there are at most `budget` of them; otherwise the
/// contiguous blocks of the descending spectrum and the reversed assignment.
inline std::vector<GroupPartition> enumerate_partitions(int m_s, int M0,
                                                        int budget = kDefaultPartitionBudget) {
  if (m_s < 1 || M0 < 1) throw Error(ErrorCode::PartitionMismatch, "m_s and M0 must be >= 1");
  std::vector<GroupPartition> out;
  if (detail::partition_count(m_s, M0) <= static_cast<double>(budget)) {
    std::vector<int> all(static_cast<std::size_t>(m_s));
    std::iota(all.begin(), all.end(), 0);
    GroupPartition current;
    detail::enumerate_rec(all, M0, current, out);
    return out;
  }
  std::vector<int> order(static_cast<std::size_t>(m_s));
  std::iota(order.begin(), order.end(), 0);
  out.push_back(detail::chunked(order, M0));
  std::reverse(order.begin(), order.end());
  GroupPartition rev = detail::chunked(order, M0);
  if (!(rev == out.front())) out.push_back(std::move(rev));
  return out;
}

/// Sorts the groups the objective treats symmetrically (all full-size groups
/// except the distinguished last one, or every group when M0 divides m_s).
inline GroupPartition canonicalize(GroupPartition part, int m_s, int M0) {
  const auto n = part.groups.size();
  const bool even = m_s % M0 == 0;
  const auto sortable = even ? n : n - 1;
  std::sort(part.groups.begin(), part.groups.begin() + static_cast<std::ptrdiff_t>(sortable));
  return part;
}

/// enumerate_partitions with symmetric duplicates removed.
inline std::vector<GroupPartition> distinct_partitions(int m_s, int M0, int budget = kDefaultPartitionBudget) {
  std::set<GroupPartition> uniq;
  for (auto& p : enumerate_partitions(m_s, M0, budget)) uniq.insert(canonicalize(std::move(p), m_s, M0));
  return {uniq.begin(), uniq.end()};
}

}  // namespace dpbound
