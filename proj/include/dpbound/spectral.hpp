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

#include "dpbound/channel_model.hpp"
#include "dpbound/errors.hpp"
#include "dpbound/linalg.hpp"

#include <cmath>

namespace dpbound {

inline constexpr double kDefaultRankTol = 1e-9;

/// Eigenvalues at or below this fraction of the largest one make a PSD matrix
/// singular for log-det purposes.
inline constexpr double kSingularRelTol = 1e-12;

/// Number of eigenvalues of the (symmetrized) matrix above rel_tol times the
/// largest eigenvalue. Zero for the zero matrix.
inline int numerical_rank(const Mat& m, double rel_tol = kDefaultRankTol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "numerical_rank needs a square matrix");
  if (m.size() == 0) return 0;
  const RealVec lam = eig_descending(m).values;
  const double top = lam(0);
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k) > rel_tol * top) ++rank;
  }
  return rank;
}

/// Orthonormal-row projection onto the column space of H Q_x H^H.
struct SignalSubspace {
  int M0 = 0;
  Mat U;             // M0 x m_r, rows are eigenvectors of H Q_x H^H
  RealVec spectrum;  // the M0 positive eigenvalues, descending

  Mat projector() const { return U.adjoint() * U; }
};

inline SignalSubspace signal_subspace(const Mat& H, const Mat& Q_x, double rel_tol = kDefaultRankTol) {
  if (Q_x.rows() != Q_x.cols() || H.cols() != Q_x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "H and Q_x shapes are inconsistent");
  }
  const Mat G = hermitian_part(H * Q_x * H.adjoint());
  const int m0 = numerical_rank(G, rel_tol);
  const HermitianEig e = eig_descending(G);
  SignalSubspace out;
  out.M0 = m0;
  out.U = e.vectors.leftCols(m0).adjoint();
  out.spectrum = e.values.head(m0);
  return out;
}

inline SignalSubspace signal_subspace(const Mat& H, const InputCovariance& Q_x,
                                      double rel_tol = kDefaultRankTol) {
  return signal_subspace(H, Q_x.matrix(), rel_tol);
}

/// Q_s = E diag(v) E^H with v sorted descending.
struct WhitenedState {
  Mat E;
  RealVec v;

  Mat reconstruct() const { return E * v.cast<Complex>().asDiagonal() * E.adjoint(); }
};

inline WhitenedState whiten_state(const Mat& Q_s, double rel_tol = kDefaultRankTol) {
  if (Q_s.rows() != Q_s.cols()) throw Error(ErrorCode::NotSquare, "Q_s must be square");
  const HermitianEig e = eig_descending(Q_s);
  const double top = e.values(0);
  const double bottom = e.values(e.values.size() - 1);
  if (!(top > 0.0) || !(bottom > rel_tol * top)) {
    throw Error(ErrorCode::QsRankDeficient, "Q_s must be full rank to whiten");
  }
  return WhitenedState{e.vectors, e.values};
}

/// log2 det of a PSD matrix from its eigenvalues; -inf when singular.
struct LogDet {
  double value = 0.0;
  bool singular = false;
};

inline LogDet log2det_psd(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "log-det needs a square matrix");
  if (m.size() == 0) return {0.0, false};
  const RealVec lam = eig_descending(m).values;
  const double top = lam(0);
  if (!(top > 0.0) || !(lam(lam.size() - 1) > kSingularRelTol * top)) return {-kInf, true};
  double sum = 0.0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) sum += std::log2(lam(k));
  return {sum, false};
}

/// log2 det(numer) - log2 det(denom). +inf when only the denominator is singular,
/// -inf when only the numerator is.
inline double logdet_ratio(const Mat& numer, const Mat& denom) {
  if (numer.rows() != denom.rows() || numer.cols() != denom.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "logdet_ratio operands differ in shape");
  }
  const LogDet n = log2det_psd(numer);
  const LogDet d = log2det_psd(denom);
  if (n.singular && d.singular) throw Error(ErrorCode::BothSingular, "0/0 determinant ratio");
  if (d.singular) return kInf;
  if (n.singular) return -kInf;
  return n.value - d.value;
}

}  // namespace dpbound
