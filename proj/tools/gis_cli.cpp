// Copyright 2026 The gis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run and sweep experiment cells, check auxiliary
// weights on grid scenarios, and trace single greedy blocks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gis/auxweight.hpp"
#include "gis/bench.hpp"
#include "gis/estimators.hpp"
#include "gis/scenario.hpp"
#include "gis/search.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("not a number: " + cell);
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty list");
  return values;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

// Options shared by run and sweep. Values given on the command line win over
// the config file, which wins over the built-in defaults.
struct RunOptions {
  std::string config;
  std::string scenario;
  std::string method;
  std::size_t t = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::vector<std::string> sets;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--config", config, "key=value file with run settings");
    cmd.add_option("--scenario", scenario, "scenario name (see list-scenarios)");
    cmd.add_option("--method", method, "method name; sweep accepts a comma list");
    cmd.add_option("--t", t, "sample size")->check(CLI::PositiveNumber);
    cmd.add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", seed, "master seed");
    cmd.add_option("--out", out, "output file (default stdout)");
    cmd.add_option("--format", format, "csv or json");
    cmd.add_option("--set", sets, "override key=value (repeatable)");
  }

  gis::RunSpec resolve(const CLI::App& cmd, gis::Format& fmt, std::string& out_path) const {
    gis::Params file;
    if (!config.empty()) file = gis::read_config(config);
    const auto take = [&](const std::string& key, const std::string& fallback) {
      const auto it = file.find(key);
      std::string v = it == file.end() ? fallback : it->second;
      file.erase(key);
      return v;
    };
    gis::RunSpec spec;
    spec.scenario = take("scenario", "");
    spec.method = take("method", "");
    spec.t = std::stoull(take("t", "100"));
    spec.reps = std::stoull(take("reps", "100"));
    spec.seed = std::stoull(take("seed", "1"));
    out_path = take("out", "");
    std::string format_name = take("format", "csv");
    spec.overrides = file;

    if (cmd.count("--scenario")) spec.scenario = scenario;
    if (cmd.count("--method")) spec.method = method;
    if (cmd.count("--t")) spec.t = t;
    if (cmd.count("--reps")) spec.reps = reps;
    if (cmd.count("--seed")) spec.seed = seed;
    if (cmd.count("--out")) out_path = out;
    if (cmd.count("--format")) format_name = format;
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--set expects key=value, got " + kv);
      spec.overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (spec.scenario.empty()) throw std::invalid_argument("no scenario given");
    if (spec.method.empty()) throw std::invalid_argument("no method given");
    fmt = gis::parse_format(format_name);
    return spec;
  }
};

void emit(const std::vector<gis::ScenarioStats>& rows, gis::Format format, const std::string& path) {
  if (path.empty()) {
    gis::write_stats(std::cout, rows, format);
  } else {
    gis::export_stats(path, rows, format);
  }
}

void list_scenarios() {
  for (const auto& name : gis::scenario_names()) {
    const auto s = gis::make_scenario(name);
    std::printf("%-10s n=%zu truth=%.17g  %s\n", name.c_str(), s.n_dim(), s.truth, s.description.c_str());
  }
}

const gis::GridDomain& require_grid(const gis::Scenario& s) {
  const gis::GridDomain* grid = s.problem.target->grid();
  if (grid == nullptr) throw std::invalid_argument("scenario " + s.name + " is not grid-supported");
  return *grid;
}

void verify_weights(const std::string& name, double b, int m) {
  const auto s = gis::make_scenario(name);
  const auto& grid = require_grid(s);
  const auto space = gis::GridSpace::for_target(*s.problem.target, s.problem.f);
  const gis::SearchConfig cfg{b, m, 1.0};
  cfg.validate();
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::fabs(gis::verify_alpha_tree(space, grid.point_at(i), cfg) - 1.0));
  }
  std::printf("%.17g\n", worst);
  if (worst > 1e-9) throw std::runtime_error("incoming alpha deviates from 1 by more than 1e-9");
}

void trace_block(const std::string& name, const std::string& start_text, gis::Params overrides) {
  const auto s = gis::make_scenario(name, overrides);
  const auto settings = gis::resolve_defaults(s, overrides);
  const auto start = parse_list(start_text);
  if (start.size() != s.n_dim()) {
    throw std::invalid_argument("start has " + std::to_string(start.size()) + " coordinates, scenario needs " +
                                std::to_string(s.n_dim()));
  }
  if (const auto* grid = s.problem.target->grid(); grid != nullptr) {
    const auto node = grid->from_real(start);
    bool on_node = node.has_value();
    for (std::size_t k = 0; on_node && k < start.size(); ++k) {
      on_node = std::fabs(grid->to_real(*node)[k] - start[k]) <= 1e-9;
    }
    if (!on_node) throw std::invalid_argument("start is not a grid node of " + name);
  }
  const gis::GreedyWeigher weigher(s.problem, settings.search, settings.weights);
  const auto terms = weigher.weigh(start, true);
  const auto& cfg = settings.search;
  std::printf("b=%g m=%d eps=%g terminated=%s\n", cfg.b, cfg.m, cfg.eps,
              terms.block.terminated_by == gis::Termination::LocalMax ? "local-max" : "step-limit");
  std::printf("step\tpoint\tlog|f p|\tf\tbranch\talpha\n");
  for (std::size_t k = 0; k < terms.points.size(); ++k) {
    std::string point;
    for (const double x : terms.points[k]) point += (point.empty() ? "" : ",") + std::to_string(x);
    std::printf("%zu\t%s\t%.10g\t%.10g\t%d\t%.10g\n", k, point.c_str(), terms.block.scores[k], terms.values[k],
                terms.branches[k], terms.alphas[k]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy importance sampling experiments"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "estimate one scenario/method cell repeatedly");
  run_opts.add_to(*run_cmd);

  RunOptions sweep_opts;
  std::string axis;
  std::string values;
  auto* sweep_cmd = app.add_subcommand("sweep", "run one cell per value of t, n or sigma_q");
  sweep_opts.add_to(*sweep_cmd);
  sweep_cmd->add_option("--axis", axis, "t, n or sigma_q")->required();
  sweep_cmd->add_option("--values", values, "comma-separated axis values")->required();

  std::string vw_scenario;
  double vw_b = 1.0;
  int vw_m = 1;
  auto* vw_cmd = app.add_subcommand("verify-weights", "max |incoming alpha - 1| over every grid point");
  vw_cmd->add_option("--scenario", vw_scenario)->required();
  vw_cmd->add_option("--b", vw_b)->required();
  vw_cmd->add_option("--m", vw_m)->required();

  std::string tb_scenario;
  std::string tb_start;
  std::vector<std::string> tb_sets;
  int tb_m = 0;
  auto* tb_cmd = app.add_subcommand("trace-block", "print one greedy block with scores, branching and alphas");
  tb_cmd->add_option("--scenario", tb_scenario)->required();
  tb_cmd->add_option("--start", tb_start, "comma-separated start coordinates")->required();
  tb_cmd->add_option("--m", tb_m, "block length limit");
  tb_cmd->add_option("--set", tb_sets, "override key=value (repeatable)");

  auto* ls_cmd = app.add_subcommand("list-scenarios", "list catalog scenarios with their truth values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      gis::Format format{};
      std::string out;
      const auto spec = run_opts.resolve(*run_cmd, format, out);
      emit({gis::run(spec)}, format, out);
    } else if (sweep_cmd->parsed()) {
      gis::Format format{};
      std::string out;
      const auto base = sweep_opts.resolve(*sweep_cmd, format, out);
      const auto axis_values = parse_list(values);
      std::vector<gis::ScenarioStats> rows;
      for (const auto& method : split(base.method)) {
        auto spec = base;
        spec.method = method;
        const auto part = gis::sweep(spec, axis, axis_values);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      emit(rows, format, out);
    } else if (vw_cmd->parsed()) {
      verify_weights(vw_scenario, vw_b, vw_m);
    } else if (tb_cmd->parsed()) {
      gis::Params overrides;
      for (const auto& kv : tb_sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--set expects key=value, got " + kv);
        overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      if (tb_cmd->count("--m")) overrides["m"] = std::to_string(tb_m);
      trace_block(tb_scenario, tb_start, overrides);
    } else if (ls_cmd->parsed()) {
      list_scenarios();
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gis: %s\n", e.what());
    return 1;
  }
  return 0;
}
