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
#include "dpbound/linalg.hpp"

#include <cmath>
#include <string>

namespace dpbound {

enum class FieldKind { Real, Complex };

/// Per-dimension log-det prefactor: 1/2 for real-valued channels, 1 for complex.
constexpr double kappa(FieldKind field) { return field == FieldKind::Real ? 0.5 : 1.0; }

inline std::string to_string(FieldKind field) {
  return field == FieldKind::Real ? "real" : "complex";
}

/// Largest admissible singular value of the interference transform. Unbounded
/// amplification is a distinct state, not a large number.
class AmplificationCap {
 public:
  static AmplificationCap finite(double value) { return AmplificationCap(value, false); }
  static AmplificationCap infinite() { return AmplificationCap(kInf, true); }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0.0; }
  double value() const { return value_; }

  friend bool operator==(const AmplificationCap&, const AmplificationCap&) = default;

 private:
  AmplificationCap(double value, bool infinite) : value_(value), infinite_(infinite) {}
  double value_;
  bool infinite_;
};

/// Numerical thresholds shared by all evaluators.
struct Tolerances {
  double psd = 1e-10;            // min eigenvalue >= -psd * max eigenvalue
  double trace_slack = 1e-12;    // tr(Q_x) <= P * (1 + trace_slack)
  double orthogonality = 1e-9;   // ||A_i Q_s A_j^H||_F <= orthogonality * (1 + ||Q_s||_F)
  double singular_slack = 1e-9;  // sigma_max(A_i) <= a_max * (1 + singular_slack)
  double rank_rel = 1e-9;        // eigenvalue counted when > rank_rel * top eigenvalue
};

/// Unvalidated channel description, e.g. as read from a model file.
struct ModelCandidate {
  int m_t = 1;
  int m_r = 1;
  int m_s = 1;
  Mat H;
  Mat Q_s;
  AmplificationCap a_max = AmplificationCap::finite(0.0);
  double P = 0.0;
  FieldKind field = FieldKind::Real;
};

class ChannelModel;
ChannelModel validate_model(const ModelCandidate& raw, const Tolerances& tol = {});

/// A channel y = H x + A s + z that passed `validate_model`. Immutable.
class ChannelModel {
 public:
  int m_t() const { return raw_.m_t; }
  int m_r() const { return raw_.m_r; }
  int m_s() const { return raw_.m_s; }
  const Mat& H() const { return raw_.H; }
  const Mat& Q_s() const { return raw_.Q_s; }
  const AmplificationCap& a_max() const { return raw_.a_max; }
  double P() const { return raw_.P; }
  FieldKind field() const { return raw_.field; }
  double kappa() const { return dpbound::kappa(raw_.field); }
  bool is_rank_one_channel() const { return raw_.m_t == 1 || raw_.m_r == 1; }

  const ModelCandidate& candidate() const { return raw_; }

  /// Same model with a different power budget or cap; revalidated.
  ChannelModel with_power(double power) const {
    ModelCandidate c = raw_;
    c.P = power;
    return validate_model(c);
  }
  ChannelModel with_amax(AmplificationCap cap) const {
    ModelCandidate c = raw_;
    c.a_max = cap;
    return validate_model(c);
  }

  friend bool operator==(const ChannelModel& a, const ChannelModel& b) {
    const auto& x = a.raw_;
    const auto& y = b.raw_;
    return x.m_t == y.m_t && x.m_r == y.m_r && x.m_s == y.m_s && x.H == y.H && x.Q_s == y.Q_s &&
           x.a_max == y.a_max && x.P == y.P && x.field == y.field;
  }

 private:
  explicit ChannelModel(ModelCandidate raw) : raw_(std::move(raw)) {}
  friend ChannelModel validate_model(const ModelCandidate&, const Tolerances&);
  ModelCandidate raw_;
};

inline ChannelModel validate_model(const ModelCandidate& raw, const Tolerances& tol) {
  if (raw.m_t < 1 || raw.m_r < 1 || raw.m_s < 1) {
    throw Error(ErrorCode::DimensionMismatch, "dimensions must be at least 1");
  }
  if (raw.H.rows() != raw.m_r || raw.H.cols() != raw.m_t) {
    throw Error(ErrorCode::DimensionMismatch,
                "H must be m_r x m_t = " + std::to_string(raw.m_r) + "x" + std::to_string(raw.m_t) +
                    ", got " + std::to_string(raw.H.rows()) + "x" + std::to_string(raw.H.cols()));
  }
  if (raw.Q_s.rows() != raw.m_s || raw.Q_s.cols() != raw.m_s) {
    throw Error(ErrorCode::DimensionMismatch, "Q_s must be m_s x m_s");
  }
  if (!(raw.P >= 0.0) || std::isinf(raw.P)) {
    throw Error(ErrorCode::NegativeParameter, "power budget P must be finite and >= 0");
  }
  if (!raw.a_max.is_infinite() && !(raw.a_max.value() >= 0.0 && std::isfinite(raw.a_max.value()))) {
    throw Error(ErrorCode::NegativeParameter, "a_max must be >= 0 or inf");
  }
  if (!raw.H.allFinite() || !raw.Q_s.allFinite()) {
    throw Error(ErrorCode::NegativeParameter, "H and Q_s must be finite");
  }
  if (raw.field == FieldKind::Real && (max_abs_imag(raw.H) > 0.0 || max_abs_imag(raw.Q_s) > 0.0)) {
    throw Error(ErrorCode::DimensionMismatch, "real-field model has complex entries");
  }

  ModelCandidate out = raw;
  out.Q_s = hermitian_part(raw.Q_s);
  const RealVec lam = eig_descending(out.Q_s).values;
  const double top = lam(0);
  const double bottom = lam(lam.size() - 1);
  if (bottom < -tol.psd * std::abs(top)) {
    throw Error(ErrorCode::NotPSD, "Q_s has a negative eigenvalue");
  }
  if (!(top > 0.0) || !(bottom > tol.rank_rel * top)) {
    throw Error(ErrorCode::QsRankDeficient, "Q_s must be full rank");
  }
  return ChannelModel(std::move(out));
}

/// Input covariance with PSD and power certificates.
class InputCovariance {
 public:
  const Mat& matrix() const { return q_; }
  double trace() const { return q_.trace().real(); }

  static InputCovariance make(const Mat& q, double power, const Tolerances& tol = {}) {
    if (q.rows() != q.cols()) throw Error(ErrorCode::NotSquare, "Q_x must be square");
    Mat h = hermitian_part(q);
    if (h.size() > 0) {
      const RealVec lam = eig_descending(h).values;
      if (lam(lam.size() - 1) < -tol.psd * std::max(lam(0), 0.0)) {
        throw Error(ErrorCode::NotPSD, "Q_x is not positive semidefinite");
      }
    }
    if (h.trace().real() > power * (1.0 + tol.trace_slack)) {
      throw Error(ErrorCode::NegativeParameter, "tr(Q_x) exceeds the power budget");
    }
    return InputCovariance(std::move(h));
  }

 private:
  explicit InputCovariance(Mat q) : q_(std::move(q)) {}
  Mat q_;
};

/// Maps an INR in dB onto the cap for unit-gain scalar reception:
/// INR = a_max^2 * state_variance.
inline double inr_to_amax(double inr_db, double state_variance) {
  if (!(state_variance > 0.0)) {
    throw Error(ErrorCode::NonpositiveVariance, "state variance must be positive");
  }
  return std::sqrt(std::pow(10.0, inr_db / 10.0) / state_variance);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace dpbound
