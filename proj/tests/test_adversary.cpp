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
#include <catch_amalgamated.hpp>

#include "dpbound/adversary.hpp"
#include "dpbound/bound_general.hpp"
#include "dpbound/random_instances.hpp"

#include <algorithm>
#include <cmath>

using namespace dpbound;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("group_count") {
  CHECK(group_count(1, 1) == 1);
  CHECK(group_count(3, 2) == 2);
  CHECK(group_count(4, 2) == 2);
  CHECK(group_count(5, 2) == 3);
  CHECK(group_count(2, 4) == 1);
}

TEST_CASE("enumerate_partitions counts") {
  CHECK(enumerate_partitions(2, 1).size() == 2);
  CHECK(enumerate_partitions(2, 2).size() == 1);
  CHECK(enumerate_partitions(3, 2).size() == 3);
  CHECK(enumerate_partitions(4, 2).size() == 6);
  CHECK(enumerate_partitions(3, 1).size() == 6);
  CHECK(distinct_partitions(4, 2).size() == 3);
  CHECK(distinct_partitions(3, 1).size() == 1);
  CHECK(distinct_partitions(3, 2).size() == 3);
}

TEST_CASE("enumerated partitions are valid and unique") {
  for (int m_s = 1; m_s <= 6; ++m_s) {
    for (int m0 = 1; m0 <= 4; ++m0) {
      const auto parts = enumerate_partitions(m_s, m0);
      for (const auto& p : parts) CHECK_NOTHROW(check_partition(p, m_s, m0));
      auto sorted = parts;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
  }
}

TEST_CASE("over budget falls back to contiguous and reversed chunks") {
  const auto parts = enumerate_partitions(5, 2, 10);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].groups == std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4}});
  CHECK(parts[1].groups == std::vector<std::vector<int>>{{3, 4}, {1, 2}, {0}});
}

TEST_CASE("check_partition rejects malformed maps") {
  CHECK_THROWS_AS(check_partition({{{0}, {0}}}, 2, 1), Error);
  CHECK_THROWS_AS(check_partition({{{0, 1}}}, 3, 2), Error);
  CHECK_THROWS_AS(check_partition({{{1, 0}}}, 2, 2), Error);
  CHECK_THROWS_AS(check_partition({{{0}, {1, 2}}}, 3, 2), Error);
  CHECK_NOTHROW(check_partition({{{0, 2}, {1}}}, 3, 2));
}

TEST_CASE("aligned families are feasible and reach the cap") {
  InstanceSampler rs(13);
  for (int t = 0; t < 60; ++t) {
    const ChannelModel model = rs.model(4);
    const WhitenedState white = whiten_state(model.Q_s());
    const Mat F = rs.gaussian(model.m_t(), rs.integer(1, model.m_t()), model.field());
    const SignalSubspace sub = signal_subspace(model.H(), F * F.adjoint());
    for (const auto& part : distinct_partitions(model.m_s(), sub.M0)) {
      const AdversaryFamily fam = build_family(model, sub, white, part);
      REQUIRE(static_cast<int>(fam.members.size()) == group_count(model.m_s(), sub.M0));
      const FeasibilityCertificate cert = certify_family(fam, model);
      CHECK(cert.feasible());
      CHECK_THAT(cert.max_singular, WithinRel(model.a_max().value(), 1e-9));
      // Projected interference is diagonal with entries a^2 v_k.
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        const Mat T = sub.U * fam.members[i] * model.Q_s() * fam.members[i].adjoint() * sub.U.adjoint();
        const auto& g = part.groups[i];
        Mat want = Mat::Zero(sub.M0, sub.M0);
        const double a2 = model.a_max().value() * model.a_max().value();
        for (std::size_t j = 0; j < g.size(); ++j) {
          want(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = a2 * white.v(g[j]);
        }
        CHECK((T - want).norm() <= 1e-8 * (1.0 + want.norm()));
      }
    }
  }
}

TEST_CASE("certify_family flags a cap violation") {
  ModelCandidate c;
  c.m_r = 2;
  c.m_s = 2;
  c.H = Mat::Identity(2, 1);
  c.Q_s = Mat::Identity(2, 2);
  c.a_max = AmplificationCap::finite(1.0);
  c.P = 1.0;
  const ChannelModel model = validate_model(c);
  AdversaryFamily fam;
  fam.M0 = 1;
  fam.members = {2.0 * Mat::Identity(2, 2)};
  CHECK_FALSE(certify_family(fam, model).cap_ok);
  fam.members = {Mat::Identity(2, 2) * 0.5, Mat::Identity(2, 2) * 0.5};
  CHECK_FALSE(certify_family(fam, model).orthogonal);
}

TEST_CASE("co-monotone pairing minimizes the objective") {
  // Direction assignment within a group changes term values; the aligned
  // construction pairs the largest eigenvalue with the strongest direction.
  InstanceSampler rs(17);
  for (int t = 0; t < 40; ++t) {
    ModelCandidate c;
    c.field = FieldKind::Real;
    c.m_t = c.m_r = 2;
    c.m_s = 2;
    c.H = Mat::Identity(2, 2);
    c.Q_s = Mat::Zero(2, 2);
    c.Q_s(0, 0) = rs.log_uniform(0.1, 10.0);
    c.Q_s(1, 1) = rs.log_uniform(0.1, 10.0);
    c.a_max = AmplificationCap::finite(rs.log_uniform(0.3, 10.0));
    c.P = rs.log_uniform(0.5, 50.0);
    const ChannelModel model = validate_model(c);
    Mat Qx = Mat::Zero(2, 2);
    const double split = rs.uniform(0.1, 0.9);
    Qx(0, 0) = split * c.P;
    Qx(1, 1) = (1 - split) * c.P;
    const BoundEvaluator ev(model);
    const SignalSubspace sub = ev.subspace(Qx);
    const AdversaryFamily fam = build_family(model, sub, ev.whitened(), {{{0, 1}}});
    const double aligned = ev.objective(sub, Qx, fam);

    SignalSubspace swapped = sub;
    swapped.U.row(0) = sub.U.row(1);
    swapped.U.row(1) = sub.U.row(0);
    AdversaryFamily other = build_family(model, swapped, ev.whitened(), {{{0, 1}}});
    const double crossed = ev.objective(sub, Qx, other);
    CHECK(aligned <= crossed + 1e-12);
  }
}
