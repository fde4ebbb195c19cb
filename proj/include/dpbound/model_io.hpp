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

// JSON model files. Schema: schema/channel_model.schema.json
//
//   { "m_t": 1, "m_r": 1, "m_s": 1,
//     "H": [[1.0]], "Q_s": [[1.0]],
//     "a_max": 100 | "inf", "P": 31.6228, "field": "real" | "complex" }
//
// Matrices are row-major arrays of rows. A complex entry is written as [re, im].

#include "dpbound/channel_model.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace dpbound {

namespace detail {

inline Complex parse_entry(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw Error(ErrorCode::ParseError, "matrix entry must be a number or [re, im]");
}

inline Mat parse_matrix(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::ParseError, std::string(name) + " must be a non-empty 2-D array");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::DimensionMismatch, std::string(name) + " has ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_entry(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline nlohmann::json matrix_to_json(const Mat& m, bool complex_entries) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (complex_entries) {
        row.push_back({m(r, c).real(), m(r, c).imag()});
      } else {
        row.push_back(m(r, c).real());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("bad value for '") + key + "'");
  }
}

}  // namespace detail

inline ModelCandidate model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "model must be a JSON object");
  ModelCandidate c;
  c.m_t = detail::required<int>(j, "m_t");
  c.m_r = detail::required<int>(j, "m_r");
  c.m_s = detail::required<int>(j, "m_s");
  if (!j.contains("H") || !j.contains("Q_s")) throw Error(ErrorCode::ParseError, "missing H or Q_s");
  c.H = detail::parse_matrix(j["H"], "H");
  c.Q_s = detail::parse_matrix(j["Q_s"], "Q_s");
  c.P = detail::required<double>(j, "P");

  if (!j.contains("a_max")) throw Error(ErrorCode::ParseError, "missing key 'a_max'");
  const auto& a = j["a_max"];
  if (a.is_string()) {
    const auto s = a.get<std::string>();
    if (s != "inf" && s != "Infinity" && s != "+inf") {
      throw Error(ErrorCode::ParseError, "a_max string must be \"inf\"");
    }
    c.a_max = AmplificationCap::infinite();
  } else if (a.is_number()) {
    c.a_max = AmplificationCap::finite(a.get<double>());
  } else {
    throw Error(ErrorCode::ParseError, "a_max must be a number or \"inf\"");
  }

  const auto field = j.value("field", std::string("real"));
  if (field == "real") {
    c.field = FieldKind::Real;
  } else if (field == "complex") {
    c.field = FieldKind::Complex;
  } else {
    throw Error(ErrorCode::ParseError, "field must be \"real\" or \"complex\"");
  }
  return c;
}

inline nlohmann::json model_to_json(const ChannelModel& m) {
  const bool cplx = m.field() == FieldKind::Complex;
  nlohmann::json j;
  j["m_t"] = m.m_t();
  j["m_r"] = m.m_r();
  j["m_s"] = m.m_s();
  j["H"] = detail::matrix_to_json(m.H(), cplx);
  j["Q_s"] = detail::matrix_to_json(m.Q_s(), cplx);
  if (m.a_max().is_infinite()) {
    j["a_max"] = "inf";
  } else {
    j["a_max"] = m.a_max().value();
  }
  j["P"] = m.P();
  j["field"] = to_string(m.field());
  return j;
}

inline ChannelModel load_model_file(const std::string& path, const Tolerances& tol = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return validate_model(model_from_json(j), tol);
}

}  // namespace dpbound
