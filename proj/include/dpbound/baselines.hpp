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

// Reference rates bracketing the bound: interference-free capacity and the
// worst-case rate of treating interference as noise.

#include "dpbound/adversary.hpp"
#include "dpbound/channel_model.hpp"
#include "dpbound/linalg.hpp"
#include "dpbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace dpbound {

struct WaterFilling {
  double rate_bits = 0.0;
  Mat Q_x;                   // optimal input covariance
  std::vector<double> gains;   // squared singular values of H, descending
  std::vector<double> powers;  // power on each eigenmode
};

/// Maximizes kappa log2 det(I + H Q_x H^H) over tr(Q_x) <= P.
inline WaterFilling water_filling(const ChannelModel& model) {
  WaterFilling out;
  const Eigen::Index m_t = model.m_t();
  out.Q_x = Mat::Zero(m_t, m_t);
  Eigen::JacobiSVD<Mat> svd(model.H(), Eigen::ComputeFullV);
  const RealVec sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-12 * top && sv(i) > 0.0) out.gains.push_back(sv(i) * sv(i));
  }
  out.powers.assign(out.gains.size(), 0.0);
  if (out.gains.empty() || model.P() <= 0.0) return out;

  // Largest active set whose water level clears every active floor 1/g.
  std::size_t active = out.gains.size();
  double level = 0.0;
  for (; active > 0; --active) {
    double floors = 0.0;
    for (std::size_t i = 0; i < active; ++i) floors += 1.0 / out.gains[i];
    level = (model.P() + floors) / static_cast<double>(active);
    if (level > 1.0 / out.gains[active - 1]) break;
  }
  double rate = 0.0;
  for (std::size_t i = 0; i < active; ++i) {
    out.powers[i] = level - 1.0 / out.gains[i];
    rate += std::log2(1.0 + out.gains[i] * out.powers[i]);
    const Vec v = svd.matrixV().col(static_cast<Eigen::Index>(i));
    out.Q_x += out.powers[i] * v * v.adjoint();
  }
  out.rate_bits = model.kappa() * rate;
  return out;
}

inline double interference_free_capacity(const ChannelModel& model) { return water_filling(model).rate_bits; }

struct TinResult {
  double rate_bits = 0.0;
  Mat Q_x;
  Mat A;  // worst aligned interference transform found (unit gain when a_max = inf)
};

/// Gaussian rate with interference treated as noise, at the water-filling Q_x,
/// minimized over saturated single-matrix adversaries A = a_max sum_j u_j e_k^H
/// that steer the strongest whitened state coordinates onto signal eigendirections.
inline TinResult tin_worst_case_detail(const ChannelModel& model, int budget = kDefaultPartitionBudget) {
  const WaterFilling wf = water_filling(model);
  TinResult out{wf.rate_bits, wf.Q_x, Mat::Zero(model.m_r(), model.m_s())};
  const SignalSubspace sub = signal_subspace(model.H(), wf.Q_x);
  if (sub.M0 == 0 || model.a_max().is_zero()) return out;

  const WhitenedState white = whiten_state(model.Q_s());
  const int used = std::min(model.m_s(), sub.M0);
  const double kap = model.kappa();

  if (model.a_max().is_infinite()) {
    // Covered directions carry nothing; leave the weakest ones uncovered.
    double rate = 0.0;
    for (int j = used; j < sub.M0; ++j) rate += std::log2(1.0 + sub.spectrum(j));
    out.rate_bits = kap * rate;
    for (int j = 0; j < used; ++j) out.A += sub.U.row(j).adjoint() * white.E.col(j).adjoint();
    return out;
  }

  const double a = model.a_max().value();
  const Mat G = model.H() * wf.Q_x * model.H().adjoint();
  const Mat I = Mat::Identity(model.m_r(), model.m_r());
  auto rate_for = [&](const std::vector<int>& dirs) {
    Mat A = Mat::Zero(model.m_r(), model.m_s());
    for (int j = 0; j < used; ++j) {
      A += a * sub.U.row(dirs[static_cast<std::size_t>(j)]).adjoint() * white.E.col(j).adjoint();
    }
    const Mat noise = I + A * model.Q_s() * A.adjoint();
    return std::pair{kap * logdet_ratio(noise + G, noise), A};
  };

  // Injective maps from the `used` strongest coordinates to signal directions.
  std::vector<std::vector<int>> candidates;
  double count = 1.0;
  for (int j = 0; j < used; ++j) count *= static_cast<double>(sub.M0 - j);
  std::vector<int> perm(static_cast<std::size_t>(sub.M0));
  std::iota(perm.begin(), perm.end(), 0);
  if (count <= static_cast<double>(budget)) {
    std::vector<int> current;
    std::vector<bool> taken(static_cast<std::size_t>(sub.M0), false);
    auto extend = [&](auto&& self) -> void {
      if (static_cast<int>(current.size()) == used) {
        candidates.push_back(current);
        return;
      }
      for (int d = 0; d < sub.M0; ++d) {
        if (taken[static_cast<std::size_t>(d)]) continue;
        taken[static_cast<std::size_t>(d)] = true;
        current.push_back(d);
        self(self);
        current.pop_back();
        taken[static_cast<std::size_t>(d)] = false;
      }
    };
    extend(extend);
  } else {
    candidates.emplace_back(perm.begin(), perm.begin() + used);
    candidates.emplace_back(perm.rbegin(), perm.rbegin() + used);
  }

  bool first = true;
  for (const auto& dirs : candidates) {
    auto [rate, A] = rate_for(dirs);
    if (first || rate < out.rate_bits) {
      out.rate_bits = rate;
      out.A = std::move(A);
      first = false;
    }
  }
  return out;
}

inline double tin_worst_case(const ChannelModel& model) { return tin_worst_case_detail(model).rate_bits; }

}  // namespace dpbound
