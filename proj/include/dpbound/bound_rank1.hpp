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

// Closed-form bound for channels whose received signal is one-dimensional
// (MISO or SIMO), its prelog approximation and the gap certificate.

#include "dpbound/channel_model.hpp"
#include "dpbound/errors.hpp"
#include "dpbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dpbound {

struct Rank1Inputs {
  double h_norm_sq_P = 0.0;  // received signal power ||h||^2 P
  std::vector<double> v;     // eigenvalues of Q_s
  AmplificationCap a_max = AmplificationCap::finite(0.0);
  double kappa = 0.5;
};

inline void check_rank1_inputs(const Rank1Inputs& in) {
  if (!(in.h_norm_sq_P >= 0.0)) throw Error(ErrorCode::NegativeParameter, "||h||^2 P must be >= 0");
  if (in.v.empty()) throw Error(ErrorCode::DimensionMismatch, "need at least one state eigenvalue");
  for (double x : in.v) {
    if (!(x > 0.0)) throw Error(ErrorCode::NegativeParameter, "state eigenvalues must be positive");
  }
}

/// Reduces a MISO/SIMO model to its rank-one inputs. Transmit beamforming and
/// receive combining both deliver ||h||^2 P.
inline Rank1Inputs rank1_inputs(const ChannelModel& model) {
  if (!model.is_rank_one_channel()) throw Error(ErrorCode::NotRankOne, "need m_t = 1 or m_r = 1");
  Rank1Inputs in;
  in.h_norm_sq_P = model.H().squaredNorm() * model.P();
  const RealVec v = whiten_state(model.Q_s()).v;
  in.v.assign(v.data(), v.data() + v.size());
  in.a_max = model.a_max();
  in.kappa = model.kappa();
  return in;
}

/// kappa [ sum_i log2((|h|^2P + 1 + a^2 v_i) / (a^2 v_i)) + log2(1 + |h|^2P) ] / (m_s + 1)
inline double corollary1_bound(const Rank1Inputs& in) {
  check_rank1_inputs(in);
  if (in.a_max.is_zero()) throw Error(ErrorCode::ZeroAmax, "a_max = 0 is the interference-free case");
  const double snr = in.h_norm_sq_P;
  double sum = 0.0;
  if (!in.a_max.is_infinite()) {
    const double a2 = in.a_max.value() * in.a_max.value();
    for (double v : in.v) sum += std::log2(1.0 + (snr + 1.0) / (a2 * v));
  }
  sum += std::log2(1.0 + snr);
  return in.kappa * sum / (static_cast<double>(in.v.size()) + 1.0);
}

inline double prelog_approx(const Rank1Inputs& in) {
  return in.kappa / (static_cast<double>(in.v.size()) + 1.0) * std::log2(1.0 + in.h_norm_sq_P);
}

struct GapCertificate {
  bool applies = false;
  double gap_bound = 0.0;  // kappa m_s / (m_s + 1)
};

/// When min v_i >= (1 + |h|^2 P) / a_max^2 every sum term is at most one bit,
/// so 0 <= corollary1_bound - prelog_approx <= gap_bound.
inline GapCertificate remark5_gap_certificate(const Rank1Inputs& in) {
  check_rank1_inputs(in);
  const double m_s = static_cast<double>(in.v.size());
  GapCertificate cert;
  cert.gap_bound = in.kappa * m_s / (m_s + 1.0);
  if (in.a_max.is_zero()) return cert;
  const double v_min = *std::min_element(in.v.begin(), in.v.end());
  if (in.a_max.is_infinite()) {
    cert.applies = true;
  } else {
    const double a2 = in.a_max.value() * in.a_max.value();
    cert.applies = v_min >= (1.0 + in.h_norm_sq_P) / a2;
  }
  return cert;
}

}  // namespace dpbound
