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

#include "dpbound/errors.hpp"

#include <algorithm>
#include <string>

namespace dpbound {

/// Growth of the interference-to-noise ratio relative to SNR.
enum class InrScaling { Sublinear, Linear, Superlinear };

inline InrScaling parse_inr_scaling(const std::string& s) {
  if (s == "sublinear") return InrScaling::Sublinear;
  if (s == "linear") return InrScaling::Linear;
  if (s == "superlinear") return InrScaling::Superlinear;
  throw Error(ErrorCode::BadSpec, "inr scaling must be sublinear, linear or superlinear");
}

struct DofScenario {
  int m_t = 1;
  int m_r = 1;
  int m_s = 1;
  bool amax_finite = true;
  InrScaling inr_scaling = InrScaling::Linear;
};

/// [M0 (ceil(m_s/M0) + 1) - m_s] / (ceil(m_s/M0) + 1)
inline double dof_fixed_rank(int m0, int m_s) {
  if (m0 < 1 || m_s < 1) throw Error(ErrorCode::DimensionMismatch, "m0 and m_s must be >= 1");
  const double groups = static_cast<double>((m_s + m0 - 1) / m0) + 1.0;
  return (m0 * groups - m_s) / groups;
}

/// Full min(m_t, m_r) DOF iff a_max is finite and INR grows sublinearly;
/// otherwise the largest fixed-rank expression over ranks 1..M*. That is
/// usually attained at M* but not always (M* = m_s = 7 peaks at rank 6).
inline double dof_upper_bound(const DofScenario& s) {
  if (s.m_t < 1 || s.m_r < 1 || s.m_s < 1) throw Error(ErrorCode::DimensionMismatch, "dimensions must be >= 1");
  const int m_star = std::min(s.m_t, s.m_r);
  if (s.amax_finite && s.inr_scaling == InrScaling::Sublinear) return m_star;
  double best = 0.0;
  for (int m0 = 1; m0 <= m_star; ++m0) best = std::max(best, dof_fixed_rank(m0, s.m_s));
  return best;
}

}  // namespace dpbound
