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

// Command-line front end. Every command prints one JSON object on stdout.
// Exit codes: 0 success, 1 usage or validation error, 2 internal error.

#include "dpbound/baselines.hpp"
#include "dpbound/bound_general.hpp"
#include "dpbound/bound_rank1.hpp"
#include "dpbound/dof.hpp"
#include "dpbound/model_io.hpp"
#include "dpbound/oracle.hpp"
#include "dpbound/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dpbound::cli {

/// Parses "a..b" (or a single "a") into an inclusive integer range.
inline std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const long v = std::stol(text);
      return {v, v};
    }
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadSpec, "expected a range like 1..3, got '" + text + "'");
  }
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error(ErrorCode::BadSpec, "expected true or false, got '" + s + "'");
}

inline FieldKind parse_field(const std::string& s) {
  if (s == "real") return FieldKind::Real;
  if (s == "complex") return FieldKind::Complex;
  throw Error(ErrorCode::BadSpec, "field must be real or complex");
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("DPB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadSpec, "DPB_SEED must be a non-negative integer");
    }
  }
  return 0;
}

inline nlohmann::json report_to_json(const BoundReport& rep) {
  nlohmann::json j;
  j["value_bits"] = json_number(rep.value_bits);
  j["raw_value_bits"] = json_number(rep.raw_value_bits);
  j["M0"] = rep.M0;
  j["kappa"] = rep.kappa;
  j["soundness"] = to_string(rep.soundness);
  nlohmann::json d;
  d["formula"] = rep.diagnostics.formula;
  d["restarts"] = rep.diagnostics.restarts;
  d["evaluations"] = rep.diagnostics.evaluations;
  d["max_sweeps"] = rep.diagnostics.max_sweeps;
  d["budget_exhausted"] = rep.diagnostics.budget_exhausted;
  if (rep.diagnostics.best_Q_x.size() > 0) {
    const bool cplx = max_abs_imag(rep.diagnostics.best_Q_x) > 0.0;
    d["best_Q_x"] = detail::matrix_to_json(rep.diagnostics.best_Q_x, cplx);
  }
  d["partition"] = rep.diagnostics.partition.groups;
  j["diagnostics"] = std::move(d);
  if (rep.soundness == Soundness::HeuristicSup) {
    j["caveat"] = "outer supremum found by local search; a larger value may exist";
  }
  return j;
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int dispatch(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Capacity upper bounds for compound vector dirty paper channels", "dpbound"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress progress logging on stderr");

  // bound rank1 / bound general
  auto* bound = app.add_subcommand("bound", "Capacity upper bound");
  bound->require_subcommand(1);
  auto* rank1 = bound->add_subcommand("rank1", "Closed-form bound for a unit-gain scalar-signal channel");
  double r1_snr = 0.0, r1_inr = 0.0;
  int r1_ms = 1;
  std::string r1_field = "real";
  rank1->add_option("--snr-db", r1_snr, "SNR = ||h||^2 P in dB")->required();
  rank1->add_option("--inr-db", r1_inr, "INR_max = a_max^2 in dB (unit state eigenvalues)")->required();
  rank1->add_option("--ms", r1_ms, "State dimension")->required()->check(CLI::PositiveNumber);
  rank1->add_option("--field", r1_field, "real or complex")->check(CLI::IsMember({"real", "complex"}));

  auto* general = bound->add_subcommand("general", "Sup-inf bound for a model file");
  std::string gen_model, gen_ranks, gen_mode = "heuristic";
  int gen_restarts = SearchConfig{}.restarts;
  std::optional<std::uint64_t> gen_seed;
  general->add_option("--model", gen_model, "Model JSON file")->required();
  general->add_option("--ranks", gen_ranks, "Signal ranks to search, e.g. 1..2");
  general->add_option("--mode", gen_mode, "Search mode")->check(CLI::IsMember({"heuristic"}));
  general->add_option("--restarts", gen_restarts, "Multistart count")->check(CLI::NonNegativeNumber);
  general->add_option("--seed", gen_seed, "Search seed (default: $DPB_SEED or 0)");

  // dof
  auto* dof = app.add_subcommand("dof", "Degrees-of-freedom upper bound");
  int d_mt = 1, d_mr = 1, d_ms = 1;
  std::string d_finite, d_scaling;
  dof->add_option("--mt", d_mt)->required()->check(CLI::PositiveNumber);
  dof->add_option("--mr", d_mr)->required()->check(CLI::PositiveNumber);
  dof->add_option("--ms", d_ms)->required()->check(CLI::PositiveNumber);
  dof->add_option("--amax-finite", d_finite, "true or false")->required();
  dof->add_option("--inr-scaling", d_scaling, "sublinear, linear or superlinear")
      ->required()
      ->check(CLI::IsMember({"sublinear", "linear", "superlinear"}));

  // baseline int-free / tin
  auto* baseline = app.add_subcommand("baseline", "Reference rates");
  baseline->require_subcommand(1);
  std::string base_model;
  auto* int_free = baseline->add_subcommand("int-free", "Interference-free capacity (water-filling)");
  int_free->add_option("--model", base_model, "Model JSON file")->required();
  auto* tin = baseline->add_subcommand("tin", "Worst-case treat-interference-as-noise rate");
  tin->add_option("--model", base_model, "Model JSON file")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Scalar INR sweep with plot data files");
  SweepSpec spec;
  std::string out_dir, traces_csv, sweep_field = "real", gs_file;
  sweep->add_option("--snr-db", spec.snr_db)->required();
  sweep->add_option("--inr-start", spec.inr_db_start)->required();
  sweep->add_option("--inr-stop", spec.inr_db_stop)->required();
  sweep->add_option("--step", spec.inr_db_step)->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--traces", traces_csv, "Comma list of bound,tin,int_free,half_if,prelog");
  sweep->add_option("--field", sweep_field)->check(CLI::IsMember({"real", "complex"}));
  sweep->add_option("--gs", gs_file, "Comparison trace copied into the output as gs.data");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the seeded oracle suite");
  std::string ladder = "0..9";
  verify->add_option("--seed-ladder", ladder, "Seed range, e.g. 0..9");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    nlohmann::json result;
    if (*rank1) {
      ModelCandidate c;
      c.m_s = r1_ms;
      c.H = Mat::Identity(1, 1);
      c.Q_s = Mat::Identity(r1_ms, r1_ms);
      c.P = db_to_linear(r1_snr);
      c.a_max = AmplificationCap::finite(inr_to_amax(r1_inr, 1.0));
      c.field = parse_field(r1_field);
      const ChannelModel model = validate_model(c);
      const BoundReport rep = capacity_upper_bound(model);
      const Rank1Inputs in = rank1_inputs(model);
      const GapCertificate cert = remark5_gap_certificate(in);
      result = report_to_json(rep);
      result["prelog_bits"] = prelog_approx(in);
      result["interference_free_bits"] = interference_free_capacity(model);
      result["gap_certificate"] = {{"applies", cert.applies}, {"gap_bound", cert.gap_bound}};
    } else if (*general) {
      const ChannelModel model = load_model_file(gen_model);
      SearchConfig cfg;
      cfg.restarts = gen_restarts;
      cfg.seed = gen_seed ? *gen_seed : default_seed();
      std::optional<std::pair<int, int>> ranks;
      if (!gen_ranks.empty()) {
        const auto [lo, hi] = parse_range(gen_ranks);
        ranks = std::pair<int, int>(static_cast<int>(lo), static_cast<int>(hi));
      }
      result = report_to_json(capacity_upper_bound(model, cfg, ranks));
      result["seed"] = cfg.seed;
      result["interference_free_bits"] = interference_free_capacity(model);
    } else if (*dof) {
      DofScenario s{d_mt, d_mr, d_ms, parse_bool(d_finite), parse_inr_scaling(d_scaling)};
      result["dof"] = dof_upper_bound(s);
      result["full_dof"] = s.amax_finite && s.inr_scaling == InrScaling::Sublinear;
      result["m_star"] = std::min(d_mt, d_mr);
    } else if (*int_free) {
      const ChannelModel model = load_model_file(base_model);
      result["baseline"] = "int-free";
      result["value_bits"] = interference_free_capacity(model);
    } else if (*tin) {
      const ChannelModel model = load_model_file(base_model);
      result["baseline"] = "tin";
      result["value_bits"] = json_number(tin_worst_case(model));
    } else if (*sweep) {
      spec.field = parse_field(sweep_field);
      if (!traces_csv.empty()) {
        spec.traces.clear();
        std::stringstream ss(traces_csv);
        std::string t;
        while (std::getline(ss, t, ',')) {
          if (!t.empty()) spec.traces.push_back(t);
        }
      }
      auto progress = [&](std::size_t done, std::size_t total) {
        if (!quiet) io.err << "sweep: " << done << "/" << total << "\n";
      };
      const SweepResult res = run_sweep(spec, progress);
      std::optional<std::filesystem::path> gs;
      if (!gs_file.empty()) gs = gs_file;
      const auto files = emit_data_files(res, out_dir, gs);
      nlohmann::json names = nlohmann::json::array();
      for (const auto& f : files) names.push_back(f.filename().string());
      result["files"] = names;
      result["rows"] = res.rows.size();
      result["out"] = out_dir;
    } else if (*verify) {
      const auto [lo, hi] = parse_range(ladder);
      if (lo < 0 || hi < lo) throw Error(ErrorCode::BadSpec, "seed ladder must be a non-empty range of seeds >= 0");
      bool all = true;
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : run_verification(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi))) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"trials", c.trials}, {"worst", c.worst}});
        all = all && c.passed;
        if (!quiet) io.err << "verify: " << c.name << (c.passed ? " ok" : " FAILED") << "\n";
      }
      result["checks"] = checks;
      result["passed"] = all;
      io.out << result.dump() << "\n";
      return all ? 0 : 2;
    }
    io.out << result.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? 2 : 1;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

inline int dispatch(int argc, char** argv, Streams io = {std::cout, std::cerr}) {
  return dispatch(std::vector<std::string>(argv, argv + argc), io);
}

}  // namespace dpbound::cli
