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

// Sup-inf capacity upper bound for the compound vector dirty paper channel.
//
// For a fixed input covariance Q_x with M0 = rank(H Q_x H^H), a family of
// N = ceil(m_s / M0) Q_s-orthogonal interference transforms {A_i} gives
//
//   kappa [ sum_{i<N} log det(S + I + T_i)/det(T_i) + log det(I + S) + g ] / (N + 1)
//
// with S = U H Q_x H^H U^H, T_i = U A_i Q_s A_i^H U^H and
//
//   g = log det(S + I + T_N)/det(T_N)                     if M0 divides m_s
//   g = log det(S + I + T_N)/det(T_N + I/2) + 2 M0        otherwise.
//
// Every feasible family gives a valid bound for that Q_x, so minimizing over
// the aligned families is always sound. Maximizing over Q_x is a local search
// and is labeled HeuristicSup unless the channel is MISO/SIMO.

#include "dpbound/adversary.hpp"
#include "dpbound/baselines.hpp"
#include "dpbound/bound_rank1.hpp"
#include "dpbound/channel_model.hpp"
#include "dpbound/errors.hpp"
#include "dpbound/linalg.hpp"
#include "dpbound/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dpbound {

enum class Soundness { Exact, CertifiedRelaxation, HeuristicSup };

inline std::string to_string(Soundness s) {
  switch (s) {
    case Soundness::Exact: return "Exact";
    case Soundness::CertifiedRelaxation: return "CertifiedRelaxation";
    case Soundness::HeuristicSup: return "HeuristicSup";
  }
  return "Unknown";
}

struct SearchConfig {
  int restarts = 16;
  std::uint64_t seed = 0;
  int max_iterations = 500;       // coordinate sweeps per restart
  double rel_improvement = 1e-8;  // stop when a sweep gains less than this
  double initial_step = 0.5;
  double min_step = 1e-9;
  int partition_budget = kDefaultPartitionBudget;
  double rank_tol = kDefaultRankTol;
  bool force_heuristic = false;   // run the search even on MISO/SIMO channels
};

struct Diagnostics {
  std::string formula;
  int restarts = 0;
  long evaluations = 0;
  int max_sweeps = 0;
  bool budget_exhausted = false;
  Mat best_Q_x;
  GroupPartition partition;
};

struct BoundReport {
  double value_bits = 0.0;
  double raw_value_bits = 0.0;
  int M0 = 0;
  double kappa = 0.5;
  Soundness soundness = Soundness::HeuristicSup;
  Diagnostics diagnostics;
};

namespace detail {

/// log det(S + I + cT) / det(cT + I/2) as c -> inf: only the directions T does
/// not reach survive, each also gaining log2(2) from the I/2.
inline double uneven_limit(const Mat& S, const Mat& T) {
  const Eigen::Index m = S.rows();
  const HermitianEig e = eig_descending(T);
  const double top = e.values.size() > 0 ? e.values(0) : 0.0;
  Eigen::Index reached = 0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    if (top > 0.0 && e.values(k) > kSingularRelTol * top) ++reached;
  }
  const Mat null_basis = e.vectors.rightCols(m - reached);
  const Mat restricted = null_basis.adjoint() * (S + Mat::Identity(m, m)) * null_basis;
  return log2det_psd(restricted).value + static_cast<double>(m - reached);
}

inline double ratio_term(const Mat& S, const Mat& T, bool limit) {
  const Mat I = Mat::Identity(S.rows(), S.rows());
  if (!limit) return logdet_ratio(S + I + T, T);
  // Full-rank limit blocks contribute exactly 0; rank-deficient ones blow up.
  return log2det_psd(T).singular ? kInf : 0.0;
}

}  // namespace detail

/// Objective for a projected signal S (M0 x M0) and interference blocks T_i.
/// With `limit`, the T_i are directions of unbounded interference.
inline double bound_objective(double kappa, const Mat& S, std::span<const Mat> T, int m_s, bool limit) {
  const int m0 = static_cast<int>(S.rows());
  if (m0 < 1) throw Error(ErrorCode::RankZeroSignal, "objective undefined for M0 = 0");
  const int n = group_count(m_s, m0);
  if (static_cast<int>(T.size()) != n) {
    throw Error(ErrorCode::PartitionMismatch, "expected " + std::to_string(n) + " interference blocks");
  }
  const Mat I = Mat::Identity(m0, m0);
  double sum = 0.0;
  for (int i = 0; i + 1 < n; ++i) sum += detail::ratio_term(S, T[static_cast<std::size_t>(i)], limit);
  sum += log2det_psd(I + S).value;

  const Mat& last = T[static_cast<std::size_t>(n - 1)];
  if (m_s % m0 == 0) {
    sum += detail::ratio_term(S, last, limit);
  } else if (limit) {
    sum += detail::uneven_limit(S, last) + 2.0 * m0;
  } else {
    sum += logdet_ratio(S + I + last, last + 0.5 * I) + 2.0 * m0;
  }
  return kappa * sum / (n + 1.0);
}

/// Caches the pieces of the bound that depend only on the model.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const ChannelModel& model, const SearchConfig& config = {})
      : model_(model), config_(config), white_(whiten_state(model.Q_s())) {}

  const ChannelModel& model() const { return model_; }
  const WhitenedState& whitened() const { return white_; }

  SignalSubspace subspace(const Mat& Q_x) const { return signal_subspace(model_.H(), Q_x, config_.rank_tol); }

  /// Projected blocks (S, T_i) of a family in the subspace's U basis.
  double objective(const SignalSubspace& sub, const Mat& Q_x, const AdversaryFamily& fam) const {
    if (sub.M0 < 1) throw Error(ErrorCode::RankZeroSignal, "H Q_x H^H = 0");
    if (fam.M0 != sub.M0) throw Error(ErrorCode::PartitionMismatch, "family built for a different M0");
    const Mat S = hermitian_part(sub.U * model_.H() * Q_x * model_.H().adjoint() * sub.U.adjoint());
    std::vector<Mat> T;
    T.reserve(fam.members.size());
    for (const auto& a : fam.members) {
      T.push_back(hermitian_part(sub.U * a * model_.Q_s() * a.adjoint() * sub.U.adjoint()));
    }
    return bound_objective(model_.kappa(), S, T, model_.m_s(), fam.limit);
  }

  struct InnerResult {
    AdversaryFamily family;
    double value = kInf;
    int M0 = 0;
    long evaluations = 0;
  };

  /// Minimum of the objective over aligned families at full cap.
  InnerResult inner_inf(const Mat& Q_x) const {
    const SignalSubspace sub = subspace(Q_x);
    if (sub.M0 < 1) throw Error(ErrorCode::RankZeroSignal, "H Q_x H^H = 0");
    InnerResult best;
    best.M0 = sub.M0;
    for (const auto& part : partitions(sub.M0)) {
      AdversaryFamily fam = build_family(model_, sub, white_, part);
      const double v = objective(sub, Q_x, fam);
      ++best.evaluations;
      if (best.evaluations == 1 || v < best.value) {
        best.value = v;
        best.family = std::move(fam);
      }
    }
    return best;
  }

  /// inner_inf value, with rate 0 when no signal reaches the receiver.
  double value_or_zero(const Mat& Q_x, InnerResult* detail = nullptr) const {
    if (numerical_rank(model_.H() * Q_x * model_.H().adjoint(), config_.rank_tol) == 0) return 0.0;
    InnerResult r = inner_inf(Q_x);
    const double v = r.value;
    if (detail) *detail = std::move(r);
    return v;
  }

 private:
  const std::vector<GroupPartition>& partitions(int m0) const {
    auto it = partition_cache_.find(m0);
    if (it == partition_cache_.end()) {
      it = partition_cache_.emplace(m0, distinct_partitions(model_.m_s(), m0, config_.partition_budget)).first;
    }
    return it->second;
  }

  ChannelModel model_;
  SearchConfig config_;
  WhitenedState white_;
  mutable std::map<int, std::vector<GroupPartition>> partition_cache_;
};

/// Objective of the bound for one input covariance and one family.
inline double objective(const ChannelModel& model, const InputCovariance& Q_x, const AdversaryFamily& fam,
                        double rank_tol = kDefaultRankTol) {
  SearchConfig cfg;
  cfg.rank_tol = rank_tol;
  BoundEvaluator ev(model, cfg);
  return ev.objective(ev.subspace(Q_x.matrix()), Q_x.matrix(), fam);
}

inline std::pair<AdversaryFamily, double> inner_inf(const ChannelModel& model, const InputCovariance& Q_x,
                                                    const SearchConfig& config = {}) {
  BoundEvaluator ev(model, config);
  auto r = ev.inner_inf(Q_x.matrix());
  return {std::move(r.family), r.value};
}

namespace detail {

inline Mat covariance_from_factor(const Mat& F, double power) {
  const double n2 = F.squaredNorm();
  if (!(n2 > 0.0)) return Mat::Zero(F.rows(), F.rows());
  return (power / n2) * (F * F.adjoint());
}

struct FactorParams {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  bool complex_entries = false;

  Eigen::Index size() const { return rows * cols * (complex_entries ? 2 : 1); }

  Mat unpack(const RealVec& x) const {
    Mat F(rows, cols);
    Eigen::Index p = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double re = x(p++);
        const double im = complex_entries ? x(p++) : 0.0;
        F(r, c) = Complex(re, im);
      }
    }
    return F;
  }

  RealVec pack(const Mat& F) const {
    RealVec x(size());
    Eigen::Index p = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        x(p++) = F(r, c).real();
        if (complex_entries) x(p++) = F(r, c).imag();
      }
    }
    return x;
  }
};

inline BoundReport rank1_report(const ChannelModel& model) {
  BoundReport rep;
  rep.kappa = model.kappa();
  rep.soundness = Soundness::Exact;
  rep.diagnostics.formula = "corollary1";
  const Rank1Inputs in = rank1_inputs(model);
  const double free = interference_free_capacity(model);

  // Beamforming along the strongest right singular vector.
  Eigen::JacobiSVD<Mat> svd(model.H(), Eigen::ComputeFullV);
  const Vec w = svd.matrixV().col(0);
  rep.diagnostics.best_Q_x = model.P() * w * w.adjoint();

  if (model.a_max().is_zero()) {
    rep.raw_value_bits = kInf;
    rep.value_bits = free;
    rep.M0 = in.h_norm_sq_P > 0.0 ? 1 : 0;
    rep.diagnostics.formula = "interference_free";
    return rep;
  }
  if (!(in.h_norm_sq_P > 0.0)) {
    rep.raw_value_bits = 0.0;
    rep.value_bits = 0.0;
    rep.M0 = 0;
    return rep;
  }
  rep.M0 = 1;
  rep.raw_value_bits = corollary1_bound(in);
  rep.value_bits = std::min(rep.raw_value_bits, free);
  GroupPartition part;
  for (int k = 0; k < model.m_s(); ++k) part.groups.push_back({k});
  rep.diagnostics.partition = part;
  return rep;
}

}  // namespace detail

/// Best bound found over input covariances Q_x = P F F^H / ||F||^2 with F of
/// m_t x M0_target, by multistart coordinate ascent on inner_inf's value.
inline BoundReport outer_sup(const ChannelModel& model, int M0_target, const SearchConfig& search = {}) {
  if (M0_target < 1 || M0_target > std::min(model.m_t(), model.m_r())) {
    throw Error(ErrorCode::DimensionMismatch, "M0 target must lie in 1..min(m_t, m_r)");
  }
  if (model.is_rank_one_channel() && !search.force_heuristic) return detail::rank1_report(model);

  const BoundEvaluator ev(model, search);
  const WaterFilling wf = water_filling(model);
  const double free = wf.rate_bits;

  BoundReport rep;
  rep.kappa = model.kappa();
  rep.soundness = Soundness::HeuristicSup;
  rep.diagnostics.formula = "general";
  rep.raw_value_bits = -kInf;

  auto consider = [&](const Mat& Q_x) {
    BoundEvaluator::InnerResult inner;
    const double v = ev.value_or_zero(Q_x, &inner);
    ++rep.diagnostics.evaluations;
    if (v > rep.raw_value_bits) {
      rep.raw_value_bits = v;
      rep.M0 = inner.M0;
      rep.diagnostics.best_Q_x = Q_x;
      rep.diagnostics.partition = inner.family.group_map;
    }
    return v;
  };

  // The water-filling point is always a candidate.
  consider(wf.Q_x);

  const detail::FactorParams fp{model.m_t(), M0_target, model.field() == FieldKind::Complex};
  Eigen::JacobiSVD<Mat> svd(model.H(), Eigen::ComputeFullV);

  for (int r = 0; r < search.restarts; ++r) {
    Mat F;
    if (r == 0) {
      // Strongest right singular vectors, water-filling powers where active.
      F = svd.matrixV().leftCols(M0_target);
      for (int c = 0; c < M0_target; ++c) {
        const double p = static_cast<std::size_t>(c) < wf.powers.size() ? wf.powers[static_cast<std::size_t>(c)] : 0.0;
        F.col(c) *= std::sqrt(p > 0.0 ? p : model.P() / M0_target);
      }
    } else {
      std::mt19937_64 rng(search.seed + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> gauss(0.0, 1.0);
      F = Mat(model.m_t(), M0_target);
      for (Eigen::Index c = 0; c < F.cols(); ++c) {
        for (Eigen::Index i = 0; i < F.rows(); ++i) {
          const double re = gauss(rng);
          const double im = fp.complex_entries ? gauss(rng) : 0.0;
          F(i, c) = Complex(re, im);
        }
      }
    }
    if (F.norm() > 0.0) F /= F.norm();

    RealVec x = fp.pack(F);
    double fx = consider(detail::covariance_from_factor(F, model.P()));
    double step = search.initial_step;
    int sweeps = 0;
    for (; sweeps < search.max_iterations; ++sweeps) {
      const double before = fx;
      for (Eigen::Index k = 0; k < x.size(); ++k) {
        for (double dir : {+1.0, -1.0}) {
          RealVec y = x;
          y(k) += dir * step;
          const double fy = consider(detail::covariance_from_factor(fp.unpack(y), model.P()));
          if (fy > fx) {
            x = y;
            fx = fy;
            break;
          }
        }
      }
      const double norm = x.norm();
      if (norm > 0.0) x /= norm;
      if (fx > before) {
        if ((fx - before) <= search.rel_improvement * std::max(std::abs(before), 1e-300)) {
          ++sweeps;
          break;
        }
      } else {
        step *= 0.5;
        if (step < search.min_step) {
          ++sweeps;
          break;
        }
      }
    }
    if (sweeps >= search.max_iterations) rep.diagnostics.budget_exhausted = true;
    rep.diagnostics.max_sweeps = std::max(rep.diagnostics.max_sweeps, sweeps);
    ++rep.diagnostics.restarts;
  }

  rep.value_bits = model.a_max().is_zero() ? free : std::min(rep.raw_value_bits, free);
  return rep;
}

/// Largest bound over the requested signal ranks, capped by the
/// interference-free capacity. Ranks default to 1..min(m_t, m_r).
inline BoundReport capacity_upper_bound(const ChannelModel& model, const SearchConfig& search = {},
                                        std::optional<std::pair<int, int>> ranks = std::nullopt) {
  const double free = interference_free_capacity(model);
  const int m_star = std::min(model.m_t(), model.m_r());

  if (model.a_max().is_zero()) {
    BoundReport rep;
    rep.kappa = model.kappa();
    rep.raw_value_bits = kInf;
    rep.value_bits = free;
    rep.soundness = Soundness::Exact;
    rep.diagnostics.formula = "interference_free";
    const WaterFilling wf = water_filling(model);
    rep.diagnostics.best_Q_x = wf.Q_x;
    rep.M0 = numerical_rank(model.H() * wf.Q_x * model.H().adjoint(), search.rank_tol);
    return rep;
  }
  if (model.is_rank_one_channel() && !search.force_heuristic) return detail::rank1_report(model);

  const int lo = ranks ? std::max(1, ranks->first) : 1;
  const int hi = ranks ? std::min(m_star, ranks->second) : m_star;
  if (lo > hi) throw Error(ErrorCode::BadSpec, "empty rank range");

  std::optional<BoundReport> best;
  int restarts = 0;
  long evaluations = 0;
  bool exhausted = false;
  for (int m0 = lo; m0 <= hi; ++m0) {
    BoundReport r = outer_sup(model, m0, search);
    restarts += r.diagnostics.restarts;
    evaluations += r.diagnostics.evaluations;
    exhausted = exhausted || r.diagnostics.budget_exhausted;
    if (!best || r.raw_value_bits > best->raw_value_bits) best = std::move(r);
  }
  best->diagnostics.restarts = restarts;
  best->diagnostics.evaluations = evaluations;
  best->diagnostics.budget_exhausted = exhausted;
  best->value_bits = std::min(best->raw_value_bits, free);
  return *best;
}

}  // namespace dpbound
