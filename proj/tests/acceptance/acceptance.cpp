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
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "dpbound/dpbound.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace dpbound;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kConstTol = 5e-4;
constexpr double kHighInrGap = 0.0012;
constexpr double kRank1Tol = 1e-9;
constexpr double kSandwichTol = 1e-9;
constexpr double kOracleTol = 1e-4;
constexpr double kSlopeTol = 0.05;

constexpr double kBudgetC1 = 1.0;
constexpr double kBudgetC2 = 1.0;
constexpr double kBudgetC3 = 10.0;
constexpr double kBudgetC4 = 5.0;
constexpr double kBudgetC5 = 60.0;
constexpr double kBudgetC6 = 120.0;
constexpr double kBudgetC7 = 5.0;
constexpr double kBudgetC8 = 1.0;
constexpr double kBudgetC9 = 5.0;

const double kP15 = std::pow(10.0, 1.5);

struct Outcome {
  bool pass = true;
  std::string detail;
};

ChannelModel scalar(double P, double inr_db, int m_s = 1) {
  ModelCandidate c;
  c.m_s = m_s;
  c.H = Mat::Identity(1, 1);
  c.Q_s = Mat::Identity(m_s, m_s);
  c.P = P;
  c.a_max = AmplificationCap::finite(inr_to_amax(inr_db, 1.0));
  return validate_model(c);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

Outcome c1() {
  const ChannelModel m = scalar(kP15, 40.0);
  const double free = interference_free_capacity(m);
  const double pre = prelog_approx(rank1_inputs(m));
  return {std::abs(free - 2.5139) <= kConstTol && std::abs(pre - 1.257) <= kConstTol,
          fmt("int_free=%.6f prelog=%.6f", free, pre)};
}

Outcome c2() {
  double prev = kInf;
  bool monotone = true;
  double last = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double b = corollary1_bound(rank1_inputs(scalar(kP15, -10.0 + i)));
    monotone = monotone && b < prev;
    prev = last = b;
  }
  const double half = prelog_approx(rank1_inputs(scalar(kP15, 40.0)));
  const double gap = last - half;
  return {monotone && gap >= 0.0 && gap <= kHighInrGap, fmt("monotone=%g bound40=%.6f gap=%.6f", monotone, last, gap)};
}

Outcome c3() {
  InstanceSampler rs(3003);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) worst = std::max(worst, cross_check_rank1(rs.rank_one_model(4, 4)).delta);
  return {worst <= kRank1Tol, fmt("worst |delta|=%.3g over 100", worst)};
}

Outcome c4() {
  InstanceSampler rs(4004);
  int hits = 0, tries = 0;
  bool ok = true;
  double widest = 0.0;
  while (hits < 1000) {
    ++tries;
    Rank1Inputs in;
    in.kappa = rs.coin() ? 1.0 : 0.5;
    in.h_norm_sq_P = rs.log_uniform(0.1, 100.0) * rs.log_uniform(0.1, 10.0);
    const int m_s = rs.integer(1, 4);
    for (int k = 0; k < m_s; ++k) in.v.push_back(rs.log_uniform(0.1, 10.0));
    in.a_max = AmplificationCap::finite(rs.log_uniform(0.1, 100.0));
    const GapCertificate cert = remark5_gap_certificate(in);
    if (!cert.applies) continue;
    ++hits;
    const double gap = corollary1_bound(in) - prelog_approx(in);
    widest = std::max(widest, gap / cert.gap_bound);
    ok = ok && gap >= 0.0 && gap <= cert.gap_bound;
  }
  return {ok, fmt("1000 qualifying of %g draws, max gap/bound=%.4f", tries, widest)};
}

Outcome c5() {
  InstanceSampler rs(5005);
  SearchConfig cfg;
  cfg.restarts = 2;
  cfg.max_iterations = 40;
  bool ok = true;
  double worst = -kInf;
  for (int t = 0; t < 200; ++t) {
    const ChannelModel m = rs.model(3);
    const double bound = capacity_upper_bound(m, cfg).value_bits;
    const double tin = tin_worst_case(m);
    const double free = interference_free_capacity(m);
    worst = std::max(worst, tin - bound);
    ok = ok && tin <= bound + kSandwichTol && tin <= free;
  }
  return {ok, fmt("max(tin - bound)=%.3g over 200", worst)};
}

Outcome c6() {
  std::vector<std::pair<ChannelModel, Mat>> cases;
  InstanceSampler rs(6006);
  auto real_model = [](const Mat& H, const Mat& Qs, double a, double P) {
    ModelCandidate c;
    c.m_r = static_cast<int>(H.rows());
    c.m_t = static_cast<int>(H.cols());
    c.m_s = static_cast<int>(Qs.rows());
    c.H = H;
    c.Q_s = Qs;
    c.a_max = AmplificationCap::finite(a);
    c.P = P;
    return validate_model(c);
  };
  auto real_cov = [&](int n) { return Mat(rs.covariance(n, FieldKind::Real)); };
  // 8 scalar, 6 with a 2x2 state and a one-dimensional signal, 6 with a single 2x2 member.
  for (int i = 0; i < 8; ++i) {
    const double P = rs.log_uniform(0.5, 50.0);
    cases.emplace_back(real_model(Mat::Constant(1, 1, rs.log_uniform(0.3, 3.0)), Mat::Constant(1, 1, rs.log_uniform(0.3, 3.0)),
                                  rs.log_uniform(0.3, 30.0), P),
                       Mat::Constant(1, 1, P));
  }
  for (int i = 0; i < 6; ++i) {
    const double P = rs.log_uniform(0.5, 50.0);
    const Mat H = rs.gaussian(2, 1, FieldKind::Real);
    cases.emplace_back(real_model(H, real_cov(2), rs.log_uniform(0.3, 10.0), P), Mat::Constant(1, 1, P));
  }
  for (int i = 0; i < 6; ++i) {
    const double P = rs.log_uniform(0.5, 20.0);
    const Mat H = rs.gaussian(2, 2, FieldKind::Real);
    const Mat F = rs.gaussian(2, 2, FieldKind::Real);
    cases.emplace_back(real_model(H, real_cov(2), rs.log_uniform(0.3, 5.0), P), detail::covariance_from_factor(F, P));
  }
  double worst = 0.0;
  for (const auto& [m, Qx] : cases) {
    const double aligned = BoundEvaluator(m).inner_inf(Qx).value;
    const int grid = m.m_s() == 1 ? 10000 : (m.m_t() == 1 ? 201 : 41);
    const double brute = brute_force_inner_inf(m, Qx, grid);
    worst = std::max(worst, std::abs(aligned - brute));
  }
  return {worst <= kOracleTol, fmt("worst |aligned - grid|=%.3g over %g cases", worst, static_cast<double>(cases.size()))};
}

Outcome c7() {
  InstanceSampler rs(7007);
  int passed = 0;
  for (int t = 0; t < 1000; ++t) {
    const int m = rs.integer(1, 4);
    const FieldKind f = rs.field();
    const Mat B = rs.gaussian(m, m, f);
    const Mat M = B * B.adjoint() + 0.1 * Mat::Identity(m, m);
    Mat Psi = hermitian_part(rs.gaussian(m, m, f));
    const Mat Linv = Eigen::LLT<Mat>(M).matrixL().solve(Mat::Identity(m, m));
    Psi *= rs.uniform(0.0, 1.0) / std::max(spectral_norm(Linv * Psi * Linv.adjoint()), 1e-300);
    if (logdet_concavity_check(M, Psi)) ++passed;
  }
  return {passed == 1000, fmt("%g/1000 pairs", passed)};
}

Outcome c8() {
  const bool table = dof_upper_bound({1, 1, 1, true, InrScaling::Linear}) == 0.5 &&
                     dof_upper_bound({2, 2, 3, true, InrScaling::Linear}) == 1.0 &&
                     dof_upper_bound({2, 2, 4, true, InrScaling::Linear}) == 2.0 / 3.0 &&
                     dof_upper_bound({3, 3, 1, true, InrScaling::Sublinear}) == 3.0;
  const double P = 1e6;
  Rank1Inputs in;
  in.h_norm_sq_P = P;
  in.v = {1.0};
  in.a_max = AmplificationCap::finite(std::sqrt(P));
  in.kappa = 0.5;
  const double slope = corollary1_bound(in) / (in.kappa * std::log2(1.0 + P));
  return {table && std::abs(slope - 0.5) <= kSlopeTol, fmt("table=%g slope=%.6f", table, slope)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c9() {
  const fs::path root = fs::temp_directory_path() / "dpbound_acceptance";
  fs::remove_all(root);
  std::vector<std::vector<fs::path>> runs;
  for (const char* sub : {"a", "b"}) runs.push_back(emit_data_files(run_sweep({}), root / sub));
  bool same = runs[0].size() == runs[1].size();
  std::size_t h = 0;
  for (std::size_t i = 0; same && i < runs[0].size(); ++i) {
    const std::string a = slurp(runs[0][i]), b = slurp(runs[1][i]);
    same = a == b && std::hash<std::string>{}(a) == std::hash<std::string>{}(b);
    h ^= std::hash<std::string>{}(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  fs::remove_all(root);
  return {same, fmt("%g files, combined hash %g", static_cast<double>(runs[0].size()), static_cast<double>(h % 1000000007))};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)();
  };
  const std::vector<Criterion> all{
      {1, "scalar reference constants", kBudgetC1, c1},  {2, "high-INR convergence", kBudgetC2, c2},
      {3, "rank-1 consistency", kBudgetC3, c3},          {4, "gap certificate", kBudgetC4, c4},
      {5, "sandwich property", kBudgetC5, c5},           {6, "oracle equivalence", kBudgetC6, c6},
      {7, "log-det concavity", kBudgetC7, c7},           {8, "DOF table and slope", kBudgetC8, c8},
      {9, "byte-exact reproducibility", kBudgetC9, c9},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.3f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
