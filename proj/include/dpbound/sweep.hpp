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

// Scalar INR sweeps and the plot-data files they produce.
//
// File formats (LF line endings, ASCII):
//   <trace>.data  one "x y" pair per line; x in dB ("%g"), y in bits with six
//                 significant digits ("%#.6g"), "inf" when unbounded
//   sweep.csv     header "inr_db,<col>,..." then one row per point, same number
//                 formatting as the .data files
//   sweep.json    {"metadata": {...}, "columns": [...], "rows": [{...}, ...]}

#include "dpbound/baselines.hpp"
#include "dpbound/bound_general.hpp"
#include "dpbound/bound_rank1.hpp"
#include "dpbound/channel_model.hpp"
#include "dpbound/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dpbound {

inline constexpr const char* kToolVersion = "dpbound 1.0.0";

inline const std::vector<std::string>& known_traces() {
  static const std::vector<std::string> names{"bound", "tin", "int_free", "half_if", "prelog"};
  return names;
}

inline const std::vector<std::string>& default_traces() {
  static const std::vector<std::string> names{"bound", "tin", "int_free", "half_if"};
  return names;
}

struct SweepSpec {
  double snr_db = 15.0;
  double inr_db_start = -10.0;
  double inr_db_stop = 40.0;
  double inr_db_step = 1.0;
  FieldKind field = FieldKind::Real;
  std::vector<std::string> traces = default_traces();
};

inline void check_sweep_spec(const SweepSpec& spec) {
  if (spec.traces.empty()) throw Error(ErrorCode::BadSpec, "no traces requested");
  for (const auto& t : spec.traces) {
    if (std::find(known_traces().begin(), known_traces().end(), t) == known_traces().end()) {
      throw Error(ErrorCode::BadSpec, "unknown trace '" + t + "'");
    }
  }
  if (!std::isfinite(spec.snr_db) || !std::isfinite(spec.inr_db_start) || !std::isfinite(spec.inr_db_stop)) {
    throw Error(ErrorCode::BadSpec, "sweep axis must be finite");
  }
  if (spec.inr_db_start > spec.inr_db_stop) throw Error(ErrorCode::BadSpec, "inr start exceeds stop");
  if (!(spec.inr_db_step > 0.0)) throw Error(ErrorCode::BadSpec, "inr step must be positive");
}

struct SweepRow {
  double inr_db = 0.0;
  std::map<std::string, double> values;
};

struct SweepResult {
  std::vector<std::string> columns;  // requested traces, plus bound_eff after bound
  std::vector<SweepRow> rows;
  nlohmann::json metadata;
};

/// Grid points start, start + step, ... up to stop (inclusive within 1e-9 steps).
inline std::vector<double> sweep_axis(const SweepSpec& spec) {
  const auto count = static_cast<long>(std::floor((spec.inr_db_stop - spec.inr_db_start) / spec.inr_db_step + 1e-9)) + 1;
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) xs.push_back(spec.inr_db_start + static_cast<double>(i) * spec.inr_db_step);
  return xs;
}

/// Unit-gain scalar channel with unit state variance, P = SNR, a_max^2 = INR.
inline ChannelModel scalar_sweep_model(double snr_db, double inr_db, FieldKind field) {
  ModelCandidate c;
  c.H = Mat::Identity(1, 1);
  c.Q_s = Mat::Identity(1, 1);
  c.P = db_to_linear(snr_db);
  c.a_max = AmplificationCap::finite(inr_to_amax(inr_db, 1.0));
  c.field = field;
  return validate_model(c);
}

inline SweepResult run_sweep(const SweepSpec& spec,
                             const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  check_sweep_spec(spec);
  SweepResult res;
  for (const auto& t : spec.traces) {
    res.columns.push_back(t);
    if (t == "bound") res.columns.push_back("bound_eff");
  }
  const auto want = [&](const char* name) {
    return std::find(spec.traces.begin(), spec.traces.end(), name) != spec.traces.end();
  };

  const auto xs = sweep_axis(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const ChannelModel model = scalar_sweep_model(spec.snr_db, xs[i], spec.field);
    SweepRow row;
    row.inr_db = xs[i];
    const double free = interference_free_capacity(model);
    if (want("bound")) {
      const BoundReport rep = capacity_upper_bound(model);
      row.values["bound"] = rep.raw_value_bits;
      row.values["bound_eff"] = rep.value_bits;
    }
    if (want("tin")) row.values["tin"] = tin_worst_case(model);
    if (want("int_free")) row.values["int_free"] = free;
    if (want("half_if")) row.values["half_if"] = free / 2.0;
    if (want("prelog")) row.values["prelog"] = prelog_approx(rank1_inputs(model));
    res.rows.push_back(std::move(row));
    if (progress) progress(i + 1, xs.size());
  }

  nlohmann::json meta;
  meta["tool_version"] = kToolVersion;
  meta["model"] = {{"m_t", 1},
                   {"m_r", 1},
                   {"m_s", 1},
                   {"H", {{1.0}}},
                   {"Q_s", {{1.0}}},
                   {"P", db_to_linear(spec.snr_db)},
                   {"field", to_string(spec.field)}};
  meta["axis"] = {{"snr_db", spec.snr_db},
                  {"inr_db_start", spec.inr_db_start},
                  {"inr_db_stop", spec.inr_db_stop},
                  {"inr_db_step", spec.inr_db_step},
                  {"convention", "SNR = P, INR_max = a_max^2 * v with v = 1"}};
  nlohmann::json tags;
  for (const auto& c : res.columns) {
    if (c == "bound") tags[c] = "Exact (raw, before min with int_free)";
    if (c == "bound_eff") tags[c] = "Exact (min with int_free)";
    if (c == "tin") tags[c] = "achievable, aligned worst case";
    if (c == "int_free") tags[c] = "Exact";
    if (c == "half_if") tags[c] = "reference only";
    if (c == "prelog") tags[c] = "approximation";
  }
  meta["soundness"] = tags;
  res.metadata = std::move(meta);
  return res;
}

inline std::string format_bits(double y) {
  if (std::isinf(y)) return y > 0 ? "inf" : "-inf";
  if (std::isnan(y)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.6g", y);
  return buf;
}

inline std::string format_db(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

inline nlohmann::json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

}  // namespace detail

/// Writes <trace>.data per requested trace, sweep.csv and sweep.json into dir.
/// A user-supplied comparison trace is copied alongside as gs.data.
inline std::vector<std::filesystem::path> emit_data_files(const SweepResult& res, const std::filesystem::path& dir,
                                                          const std::optional<std::filesystem::path>& gs_data = {}) {
  if (res.rows.empty() || res.columns.empty()) throw Error(ErrorCode::IoError, "empty sweep result, nothing written");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& col : res.columns) {
    if (col == "bound_eff") continue;
    std::string text;
    for (const auto& row : res.rows) text += format_db(row.inr_db) + " " + format_bits(row.values.at(col)) + "\n";
    const auto path = dir / (col + ".data");
    detail::write_text(path, text);
    written.push_back(path);
  }

  std::string csv = "inr_db";
  for (const auto& col : res.columns) csv += "," + col;
  csv += "\n";
  for (const auto& row : res.rows) {
    csv += format_db(row.inr_db);
    for (const auto& col : res.columns) csv += "," + format_bits(row.values.at(col));
    csv += "\n";
  }
  detail::write_text(dir / "sweep.csv", csv);
  written.push_back(dir / "sweep.csv");

  nlohmann::json j;
  j["metadata"] = res.metadata;
  j["columns"] = res.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : res.rows) {
    nlohmann::json r;
    r["inr_db"] = row.inr_db;
    for (const auto& col : res.columns) r[col] = json_number(row.values.at(col));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  detail::write_text(dir / "sweep.json", j.dump(2) + "\n");
  written.push_back(dir / "sweep.json");

  if (gs_data) {
    const auto target = dir / "gs.data";
    std::filesystem::copy_file(*gs_data, target, std::filesystem::copy_options::overwrite_existing, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot copy '" + gs_data->string() + "': " + ec.message());
    written.push_back(target);
  }
  return written;
}

}  // namespace dpbound
