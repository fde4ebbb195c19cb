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

// Independent checks of the bound machinery. The brute-force inner minimum
// evaluates the objective with explicit 1x1/2x2 determinants over a
// deterministic grid of feasible families; it shares only the signal subspace
// definition with the main evaluator.

#include "dpbound/bound_general.hpp"
#include "dpbound/bound_rank1.hpp"
#include "dpbound/channel_model.hpp"
#include "dpbound/errors.hpp"
#include "dpbound/linalg.hpp"
#include "dpbound/random_instances.hpp"
#include "dpbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace dpbound {

namespace oracle_detail {

using Small = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;
using Real2 = Eigen::Matrix2d;

inline double det_hermitian(const Small& m) {
  if (m.rows() == 1) return m(0, 0).real();
  return m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
}

inline double scale_of(const Small& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) s = std::max(s, std::abs(m(i, i).real()));
  return s;
}

/// log2(det(num)/det(den)); +inf for a vanishing denominator.
inline double log2_det_ratio(const Small& num, const Small& den) {
  const double d = det_hermitian(den);
  const double sc = std::pow(std::max(scale_of(den), 1e-300), static_cast<double>(den.rows()));
  if (!(d > 1e-12 * sc)) return kInf;
  return std::log2(det_hermitian(num) / d);
}

inline double objective(double kappa, const Small& S, const std::vector<Small>& T, int m_s) {
  const auto m0 = S.rows();
  const int n = static_cast<int>(T.size());
  const Small I = Small::Identity(m0, m0);
  double sum = 0.0;
  for (int i = 0; i + 1 < n; ++i) sum += log2_det_ratio(S + I + T[static_cast<std::size_t>(i)], T[static_cast<std::size_t>(i)]);
  sum += std::log2(det_hermitian(I + S));
  const Small& last = T.back();
  if (m_s % m0 == 0) {
    sum += log2_det_ratio(S + I + last, last);
  } else {
    sum += log2_det_ratio(S + I + last, last + 0.5 * I) + 2.0 * static_cast<double>(m0);
  }
  return kappa * sum / (n + 1.0);
}

inline std::vector<double> linspace_inclusive(double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? hi : hi * i / (n - 1.0);
  return out;
}

inline std::vector<double> half_turn(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::numbers::pi * i / n;
  return out;
}

}  // namespace oracle_detail

/// Grid minimum of the objective over feasible families {A_i}, independent of
/// the aligned construction. Members are g r w^T with gain g in [0, a_max] and
/// unit directions on half-turn angle grids; with a single 2x2 member the
/// parameterization is R(phi) diag(g1, +-g2) R(theta)^T.
inline double brute_force_inner_inf(const ChannelModel& model, const Mat& Q_x, int grid_resolution) {
  using namespace oracle_detail;
  if (model.field() != FieldKind::Real || model.a_max().is_infinite()) {
    throw Error(ErrorCode::TooLarge, "oracle grid covers real channels with finite a_max");
  }
  if (model.m_r() > 2 || model.m_s() > 2) throw Error(ErrorCode::TooLarge, "oracle needs m_r, m_s <= 2");
  if (max_abs_imag(Q_x) > 0.0) throw Error(ErrorCode::TooLarge, "oracle needs a real Q_x");
  if (grid_resolution < 2) throw Error(ErrorCode::BadSpec, "grid resolution must be >= 2");

  const SignalSubspace sub = signal_subspace(model.H(), Q_x);
  const int m0 = sub.M0;
  if (m0 < 1) throw Error(ErrorCode::RankZeroSignal, "H Q_x H^H = 0");
  const int m_s = model.m_s();
  const int n = group_count(m_s, m0);
  if (n > 2) throw Error(ErrorCode::TooLarge, "oracle needs at most two groups");

  const Small U = sub.U;
  const Small S = hermitian_part(sub.U * model.H() * Q_x * model.H().adjoint() * sub.U.adjoint());
  const Real2 Qs = m_s == 2 ? Real2(model.Q_s().real()) : Real2::Identity() * model.Q_s()(0, 0).real();
  const double kap = model.kappa();
  const double a = model.a_max().value();
  const int G = grid_resolution;
  const auto gains = a == 0.0 ? std::vector<double>{0.0} : linspace_inclusive(a, G);
  const auto angles = half_turn(G);
  const std::vector<double> single_angle{0.0};
  const auto& out_angles = model.m_r() == 2 ? angles : single_angle;

  // U r for each output direction r.
  std::vector<Small> Ur;
  for (double phi : out_angles) {
    Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 2, 1> r(model.m_r());
    if (model.m_r() == 2) {
      r << std::cos(phi), std::sin(phi);
    } else {
      r << 1.0;
    }
    Ur.push_back(U * r);
  }

  double best = kInf;
  std::vector<Small> T(static_cast<std::size_t>(n));

  if (m_s == 1) {
    const double v = Qs(0, 0);
    for (double g : gains) {
      for (const auto& ur : Ur) {
        T[0] = (g * g * v) * (ur * ur.adjoint());
        best = std::min(best, objective(kap, S, T, m_s));
      }
    }
    return best;
  }

  if (n == 2) {
    // Two rank-one members with Q_s-orthogonal state directions. The objective
    // is a sum of one term per member, so the members are minimized in turn.
    std::vector<double> proj(Ur.size());
    for (std::size_t i = 0; i < Ur.size(); ++i) proj[i] = Ur[i].squaredNorm();
    auto block = [](double t) { return Small::Constant(1, 1, Complex(t, 0.0)); };
    for (double theta : angles) {
      Eigen::Vector2d w1(std::cos(theta), std::sin(theta));
      Eigen::Vector2d w2 = Qs.inverse() * Eigen::Vector2d(-w1(1), w1(0));
      w2.normalize();
      const double q1 = w1.dot(Qs * w1);
      const double q2 = w2.dot(Qs * w2);
      T[1] = block(a * a * q2);
      double first = kInf, t1 = 0.0;
      for (double g1 : gains) {
        for (double c1 : proj) {
          T[0] = block(g1 * g1 * q1 * c1);
          const double v = objective(kap, S, T, m_s);
          if (v < first) first = v, t1 = g1 * g1 * q1 * c1;
        }
      }
      T[0] = block(t1);
      for (double g2 : gains) {
        for (double c2 : proj) {
          T[1] = block(g2 * g2 * q2 * c2);
          best = std::min(best, objective(kap, S, T, m_s));
        }
      }
    }
    return best;
  }

  // Single 2x2 member, any singular values within the cap. The uniform pass is
  // followed by deterministic zoom levels around the best cell; every point
  // is a feasible family, so zooming only tightens the grid minimum.
  auto member_value = [&](double phi, double theta, double g1, double g2, double sign) {
    Real2 R, Rt;
    R << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    Rt << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Real2 A = R * Eigen::Vector2d(g1, sign * g2).asDiagonal() * Rt.transpose();
    const Real2 B = A * Qs * A.transpose();
    const Small Bc = B.cast<Complex>();
    T[0] = U * Bc * U.adjoint();
    return objective(kap, S, T, m_s);
  };
  double arg[5] = {0.0, 0.0, 0.0, 0.0, 1.0};
  for (double phi : angles) {
    for (double theta : angles) {
      for (double g1 : gains) {
        for (double g2 : gains) {
          for (double sign : {1.0, -1.0}) {
            const double v = member_value(phi, theta, g1, g2, sign);
            if (v < best) best = v, arg[0] = phi, arg[1] = theta, arg[2] = g1, arg[3] = g2, arg[4] = sign;
            if (g2 == 0.0) break;
          }
        }
      }
    }
  }
  if (a == 0.0) return best;
  constexpr int kZoomLevels = 12;
  constexpr int kZoomPoints = 9;
  double angle_half = std::numbers::pi / G;
  double gain_half = a / (G - 1.0);
  for (int level = 0; level < kZoomLevels; ++level) {
    const double c[4] = {arg[0], arg[1], arg[2], arg[3]};
    auto offsets = [&](double half) {
      std::vector<double> o(kZoomPoints);
      for (int i = 0; i < kZoomPoints; ++i) o[static_cast<std::size_t>(i)] = half * (2.0 * i / (kZoomPoints - 1.0) - 1.0);
      return o;
    };
    const auto da = offsets(angle_half), dg = offsets(gain_half);
    for (double d0 : da) {
      for (double d1 : da) {
        for (double d2 : dg) {
          const double g1 = std::clamp(c[2] + d2, 0.0, a);
          for (double d3 : dg) {
            const double g2 = std::clamp(c[3] + d3, 0.0, a);
            const double v = member_value(c[0] + d0, c[1] + d1, g1, g2, arg[4]);
            if (v < best) best = v, arg[0] = c[0] + d0, arg[1] = c[1] + d1, arg[2] = g1, arg[3] = g2;
          }
        }
      }
    }
    angle_half /= 4.0;
    gain_half /= 4.0;
  }
  return best;
}

/// log2 det(M + Psi) + log2 det(M - Psi) <= 2 log2 det(M) (+1e-9).
inline bool logdet_concavity_check(const Mat& M, const Mat& Psi) {
  if (M.rows() != M.cols() || Psi.rows() != M.rows() || Psi.cols() != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "M and Psi must be square of equal size");
  }
  const Mat plus = hermitian_part(M + Psi);
  const Mat minus = hermitian_part(M - Psi);
  const double scale = std::max(1.0, M.norm());
  for (const Mat* m : {&plus, &minus}) {
    const RealVec lam = eig_descending(*m).values;
    if (lam(lam.size() - 1) < -1e-12 * scale) throw Error(ErrorCode::InfeasiblePsi, "M +- Psi must be PSD");
  }
  const double lhs = log2det_psd(plus).value + log2det_psd(minus).value;
  const double rhs = 2.0 * log2det_psd(hermitian_part(M)).value;
  return lhs <= rhs + 1e-9;
}

struct Rank1CrossCheck {
  double general = 0.0;
  double closed_form = 0.0;
  double delta = 0.0;
};

/// The general evaluator at the beamforming Q_x against the closed form.
inline Rank1CrossCheck cross_check_rank1(const ChannelModel& model) {
  if (!model.is_rank_one_channel()) throw Error(ErrorCode::NotRankOne, "need m_t = 1 or m_r = 1");
  Eigen::JacobiSVD<Mat> svd(model.H(), Eigen::ComputeFullV);
  const Vec w = svd.matrixV().col(0);
  const Mat Q_x = model.P() * w * w.adjoint();
  Rank1CrossCheck out;
  out.general = BoundEvaluator(model).inner_inf(Q_x).value;
  out.closed_form = corollary1_bound(rank1_inputs(model));
  out.delta = std::abs(out.general - out.closed_form);
  return out;
}

struct VerifyCheck {
  std::string name;
  bool passed = false;
  int trials = 0;
  double worst = 0.0;  // largest observed violation metric
};

/// Seeded oracle suite behind the `verify` command. Each seed in
/// [seed_lo, seed_hi] drives one batch of randomized trials.
inline std::vector<VerifyCheck> run_verification(std::uint64_t seed_lo, std::uint64_t seed_hi) {
  std::vector<VerifyCheck> checks;

  VerifyCheck concave{"logdet_concavity", true, 0, 0.0};
  VerifyCheck rank1{"rank1_cross_check", true, 0, 0.0};
  VerifyCheck brute{"inner_inf_vs_brute_force", true, 0, 0.0};
  VerifyCheck sandwich{"tin_below_bound", true, 0, 0.0};

  for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed) {
    InstanceSampler rs(seed);
    for (int t = 0; t < 100; ++t) {
      const int m = rs.integer(1, 4);
      const FieldKind f = rs.field();
      const Mat B = rs.gaussian(m, m, f);
      const Mat M = B * B.adjoint() + 0.1 * Mat::Identity(m, m);
      Mat Psi = hermitian_part(rs.gaussian(m, m, f));
      // Shrink Psi until M +- Psi stays PSD.
      const Eigen::LLT<Mat> chol(M);
      const Mat L = chol.matrixL();
      const Mat W = L.inverse() * Psi * L.inverse().adjoint();
      const double r = std::max(spectral_norm(W), 1e-300);
      Psi *= rs.uniform(0.0, 1.0) / r;
      ++concave.trials;
      if (!logdet_concavity_check(M, Psi)) concave.passed = false;
    }
    for (int t = 0; t < 10; ++t) {
      const ChannelModel model = rs.rank_one_model();
      const auto cc = cross_check_rank1(model);
      ++rank1.trials;
      rank1.worst = std::max(rank1.worst, cc.delta);
      if (!(cc.delta <= 1e-9)) rank1.passed = false;
    }
    {
      ModelCandidate c;
      c.m_t = c.m_r = c.m_s = 1;
      c.H = Mat::Constant(1, 1, rs.log_uniform(0.3, 3.0));
      c.Q_s = Mat::Constant(1, 1, rs.log_uniform(0.3, 3.0));
      c.a_max = AmplificationCap::finite(rs.log_uniform(0.5, 50.0));
      c.P = rs.log_uniform(0.5, 50.0);
      const ChannelModel model = validate_model(c);
      const Mat Q_x = Mat::Constant(1, 1, model.P());
      const double aligned = BoundEvaluator(model).inner_inf(Q_x).value;
      const double grid = brute_force_inner_inf(model, Q_x, 2001);
      ++brute.trials;
      brute.worst = std::max(brute.worst, std::abs(aligned - grid));
      if (!(std::abs(aligned - grid) <= 1e-4)) brute.passed = false;
    }
    for (int t = 0; t < 5; ++t) {
      const ChannelModel model = rs.model(2);
      SearchConfig cfg;
      cfg.restarts = 2;
      cfg.max_iterations = 50;
      cfg.seed = seed;
      const double bound = capacity_upper_bound(model, cfg).value_bits;
      const double tin = tin_worst_case(model);
      ++sandwich.trials;
      sandwich.worst = std::max(sandwich.worst, tin - bound);
      if (!(tin <= bound + 1e-9)) sandwich.passed = false;
    }
  }
  checks.push_back(concave);
  checks.push_back(rank1);
  checks.push_back(brute);
  checks.push_back(sandwich);
  return checks;
}

}  // namespace dpbound
