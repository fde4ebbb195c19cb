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

// Seeded random channel instances for property checks and the verify command.

#include "dpbound/channel_model.hpp"
#include "dpbound/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace dpbound {

class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  FieldKind field() { return coin() ? FieldKind::Complex : FieldKind::Real; }

  Mat gaussian(Eigen::Index rows, Eigen::Index cols, FieldKind field) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double re = g(rng_);
        const double im = field == FieldKind::Complex ? g(rng_) : 0.0;
        m(r, c) = Complex(re, im);
      }
    }
    return m;
  }

  /// Full-rank PSD matrix with eigenvalues spread over about two decades.
  Mat covariance(int m, FieldKind field) {
    const Mat B = gaussian(m, m, field);
    Mat q = B * B.adjoint() / static_cast<double>(m) + 0.05 * Mat::Identity(m, m);
    return hermitian_part(q * log_uniform(0.1, 10.0));
  }

  /// MISO or SIMO channel, dims <= max_dim, m_s <= max_state,
  /// a_max in [0.1, 100], P in [0.1, 100].
  ChannelModel rank_one_model(int max_dim = 4, int max_state = 4) {
    ModelCandidate c;
    c.field = field();
    const int other = integer(1, max_dim);
    if (coin()) {
      c.m_t = other;
      c.m_r = 1;
    } else {
      c.m_t = 1;
      c.m_r = other;
    }
    c.m_s = integer(1, max_state);
    c.H = gaussian(c.m_r, c.m_t, c.field);
    c.Q_s = covariance(c.m_s, c.field);
    c.a_max = AmplificationCap::finite(log_uniform(0.1, 100.0));
    c.P = log_uniform(0.1, 100.0);
    return validate_model(c);
  }

  /// General model with all dimensions in 1..max_dim.
  ChannelModel model(int max_dim = 3) {
    ModelCandidate c;
    c.field = field();
    c.m_t = integer(1, max_dim);
    c.m_r = integer(1, max_dim);
    c.m_s = integer(1, max_dim);
    c.H = gaussian(c.m_r, c.m_t, c.field);
    c.Q_s = covariance(c.m_s, c.field);
    c.a_max = AmplificationCap::finite(log_uniform(0.1, 100.0));
    c.P = log_uniform(0.1, 100.0);
    return validate_model(c);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dpbound
