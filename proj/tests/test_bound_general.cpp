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

#include "dpbound/baselines.hpp"
#include "dpbound/bound_general.hpp"
#include "dpbound/random_instances.hpp"

#include <cmath>

using namespace dpbound;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kP15 = std::pow(10.0, 1.5);

ChannelModel diagonal_model(int m_t, int m_r, int m_s, double P, AmplificationCap a) {
  ModelCandidate c;
  c.m_t = m_t;
  c.m_r = m_r;
  c.m_s = m_s;
  c.H = Mat::Identity(m_r, m_t);
  c.Q_s = Mat::Identity(m_s, m_s);
  c.P = P;
  c.a_max = a;
  return validate_model(c);
}

Mat scaled_identity(int n, double p) { return Mat::Identity(n, n) * p; }

}  // namespace

TEST_CASE("bound_objective on hand blocks") {
  const Mat S = Mat::Constant(1, 1, 3.0);
  const std::vector<Mat> T{Mat::Constant(1, 1, 4.0)};
  // 0.5 * [log2(8/4) + log2(4)] / 2
  CHECK_THAT(bound_objective(0.5, S, T, 1, false), WithinAbs(0.75, 1e-15));
  CHECK_THAT(bound_objective(0.5, S, T, 1, true), WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(bound_objective(0.5, S, std::vector<Mat>{}, 1, false), Error);
  CHECK_THROWS_AS(bound_objective(0.5, Mat(0, 0), T, 1, false), Error);
}

TEST_CASE("uneven tail term") {
  // M0 = 2, m_s = 3: the last group covers one direction.
  Mat S = Mat::Zero(2, 2);
  S(0, 0) = 4.0;
  S(1, 1) = 1.0;
  Mat T0 = Mat::Identity(2, 2) * 9.0;
  Mat T1 = Mat::Zero(2, 2);
  T1(0, 0) = 9.0;
  const std::vector<Mat> T{T0, T1};
  const double head = std::log2((14.0 * 11.0) / 81.0);
  const double signal = std::log2(5.0 * 2.0);
  const double tail = std::log2((14.0 * 2.0) / (9.5 * 0.5)) + 4.0;
  CHECK_THAT(bound_objective(1.0, S, T, 3, false), WithinAbs((head + signal + tail) / 3.0, 1e-12));

  // Unbounded scaling: the covered direction drops out, the free one keeps
  // log2(1 + s) plus one bit.
  const double tail_inf = std::log2(2.0) + 1.0 + 4.0;
  CHECK_THAT(bound_objective(1.0, S, T, 3, true), WithinAbs((0.0 + signal + tail_inf) / 3.0, 1e-12));
  const std::vector<Mat> big{T0 * 1e9, T1 * 1e9};
  CHECK_THAT(bound_objective(1.0, S, big, 3, false), WithinAbs((signal + tail_inf) / 3.0, 1e-7));
}

TEST_CASE("scalar inner_inf reproduces the closed form") {
  for (double inr : {-10.0, 0.0, 10.0, 25.0, 40.0}) {
    const ChannelModel m = diagonal_model(1, 1, 1, kP15, AmplificationCap::finite(inr_to_amax(inr, 1.0)));
    const auto [fam, value] = inner_inf(m, InputCovariance::make(scaled_identity(1, kP15), kP15));
    CHECK_THAT(value, WithinAbs(corollary1_bound(rank1_inputs(m)), 1e-12));
    CHECK(certify_family(fam, m).feasible());
  }
  ModelCandidate c = diagonal_model(1, 1, 2, kP15, AmplificationCap::finite(10.0)).candidate();
  c.Q_s(0, 0) = 0.1;
  const ChannelModel two = validate_model(c);
  CHECK_THAT(inner_inf(two, InputCovariance::make(scaled_identity(1, kP15), kP15)).second,
             WithinAbs(1.25446013611768, 1e-9));
}

TEST_CASE("unbounded cap") {
  const ChannelModel m = diagonal_model(1, 1, 1, kP15, AmplificationCap::infinite());
  const Mat Qx = scaled_identity(1, kP15);
  const double limit = BoundEvaluator(m).inner_inf(Qx).value;
  CHECK_THAT(limit, WithinAbs(1.2569519183376299, 1e-12));
  const double big = BoundEvaluator(m.with_amax(AmplificationCap::finite(1e6))).inner_inf(Qx).value;
  CHECK(big >= limit);
  CHECK_THAT(big, WithinAbs(limit, 1e-9));

  const ChannelModel vec = diagonal_model(2, 2, 3, 10.0, AmplificationCap::infinite());
  const Mat Q2 = scaled_identity(2, 5.0);
  const double vlim = BoundEvaluator(vec).inner_inf(Q2).value;
  const double vbig = BoundEvaluator(vec.with_amax(AmplificationCap::finite(1e5))).inner_inf(Q2).value;
  CHECK(std::isfinite(vlim));
  CHECK_THAT(vbig, WithinAbs(vlim, 1e-6));
}

TEST_CASE("inner_inf is monotone in the cap and in power") {
  InstanceSampler rs(31);
  for (int t = 0; t < 40; ++t) {
    const ChannelModel m = rs.model(3);
    const Mat F = rs.gaussian(m.m_t(), rs.integer(1, m.m_t()), m.field());
    const Mat Qx = detail::covariance_from_factor(F, m.P());
    const double base = BoundEvaluator(m).value_or_zero(Qx);
    const double a = m.a_max().value();
    const double more_cap = BoundEvaluator(m.with_amax(AmplificationCap::finite(2.0 * a))).value_or_zero(Qx);
    CHECK(more_cap <= base + 1e-10);
    const ChannelModel louder = m.with_power(3.0 * m.P());
    const double more_power = BoundEvaluator(louder).value_or_zero(3.0 * Qx);
    CHECK(more_power >= base - 1e-10);
  }
}

TEST_CASE("outer_sup on the 2x2 identity channel") {
  const ChannelModel m = diagonal_model(2, 2, 2, 10.0, AmplificationCap::finite(10.0));
  // The channel is rotation invariant, so a power split grid covers every Q_x.
  const BoundEvaluator ev(m);
  double grid = 0.0;
  for (int i = 1; i < 1000; ++i) {
    Mat Qx = Mat::Zero(2, 2);
    Qx(0, 0) = 10.0 * i / 1000.0;
    Qx(1, 1) = 10.0 - Qx(0, 0).real();
    grid = std::max(grid, ev.inner_inf(Qx).value);
  }
  CHECK_THAT(grid, WithinAbs(1.3345133827548152, 1e-6));
  const BoundReport rep = outer_sup(m, 2);
  CHECK(rep.M0 == 2);
  CHECK(rep.soundness == Soundness::HeuristicSup);
  CHECK(rep.raw_value_bits >= grid - 1e-9);
  CHECK_THAT(rep.raw_value_bits, WithinAbs(1.3345133827548152, 1e-6));
  CHECK(rep.diagnostics.best_Q_x.trace().real() <= 10.0 * (1.0 + 1e-12));
}

TEST_CASE("forced search on a rank-one channel reaches the closed form") {
  InstanceSampler rs(41);
  for (int t = 0; t < 5; ++t) {
    const ChannelModel m = rs.rank_one_model(3, 3);
    SearchConfig cfg;
    cfg.force_heuristic = true;
    cfg.restarts = 4;
    const BoundReport forced = outer_sup(m, 1, cfg);
    const BoundReport exact = outer_sup(m, 1);
    CHECK(exact.soundness == Soundness::Exact);
    CHECK_THAT(forced.raw_value_bits, WithinAbs(exact.raw_value_bits, 1e-6));
  }
}

TEST_CASE("capacity_upper_bound brackets") {
  InstanceSampler rs(51);
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.max_iterations = 60;
  for (int t = 0; t < 20; ++t) {
    const ChannelModel m = rs.model(3);
    const BoundReport rep = capacity_upper_bound(m, cfg);
    const double free = interference_free_capacity(m);
    CHECK(rep.value_bits <= free + 1e-12);
    CHECK(tin_worst_case(m) <= rep.value_bits + 1e-9);
    if (!m.is_rank_one_channel()) CHECK(rep.soundness == Soundness::HeuristicSup);
  }
}

TEST_CASE("zero cap and zero power") {
  const ChannelModel quiet = diagonal_model(2, 2, 1, 5.0, AmplificationCap::finite(0.0));
  const BoundReport rep = capacity_upper_bound(quiet);
  CHECK(rep.soundness == Soundness::Exact);
  CHECK(rep.value_bits == interference_free_capacity(quiet));
  CHECK(rep.M0 == 2);

  const ChannelModel silent = diagonal_model(1, 1, 1, 0.0, AmplificationCap::finite(1.0));
  CHECK(capacity_upper_bound(silent).value_bits == 0.0);

  const ChannelModel m = diagonal_model(2, 2, 1, 5.0, AmplificationCap::finite(1.0));
  CHECK_THROWS_AS(capacity_upper_bound(m, {}, std::pair{3, 4}), Error);
  CHECK_THROWS_AS(outer_sup(m, 3), Error);
}

TEST_CASE("search is deterministic for a seed") {
  const ChannelModel m = InstanceSampler(77).model(3);
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 9;
  const BoundReport a = capacity_upper_bound(m, cfg);
  const BoundReport b = capacity_upper_bound(m, cfg);
  CHECK(a.raw_value_bits == b.raw_value_bits);
  CHECK(a.diagnostics.evaluations == b.diagnostics.evaluations);
}
