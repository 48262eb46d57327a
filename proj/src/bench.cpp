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

#include "gis/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gis/baselines.hpp"
#include "gis/estimators.hpp"
#include "gis/kalman.hpp"

namespace gis {
namespace {

constexpr const char* kCsvHeader = "scenario,method,n_dim,t,reps,seed,truth,mean,bias,stdev,rmse";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const KalmanModel& require_kalman(const Scenario& scenario, const std::string& method) {
  if (!scenario.kalman) {
    throw std::invalid_argument("method " + method + " needs a dynamic-model scenario, got " + scenario.name);
  }
  return *scenario.kalman;
}

std::size_t to_count(double v, const std::string& what) {
  if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument(what + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

void RunSpec::validate() const {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  const auto methods = method_names();
  if (std::find(methods.begin(), methods.end(), method) == methods.end()) {
    throw std::invalid_argument("unknown method: " + method);
  }
}

std::vector<std::string> method_names() { return {"ds", "rs", "is", "gis", "met", "gibbs", "hmc", "pf", "gis-dyn"}; }

MethodDefaults resolve_defaults(const Scenario& scenario, const Params& overrides) {
  MethodDefaults d = scenario.defaults;
  d.search.b = param_double(overrides, "b", d.search.b);
  d.search.m = static_cast<int>(param_int(overrides, "m", d.search.m));
  d.search.eps = param_double(overrides, "eps", d.search.eps);
  const std::string weights = param_string(overrides, "weights", d.weights == WeightMode::Direct ? "direct" : "indirect");
  if (weights == "direct") {
    d.weights = WeightMode::Direct;
  } else if (weights == "indirect") {
    d.weights = WeightMode::Indirect;
  } else {
    throw std::invalid_argument("weights must be direct or indirect, got " + weights);
  }
  const long long burn_in = param_int(overrides, "burn_in", static_cast<long long>(d.chain.burn_in));
  if (burn_in < 0) throw std::invalid_argument("burn_in must be nonnegative");
  d.chain.burn_in = static_cast<std::size_t>(burn_in);
  d.chain.proposal_scale = param_double(overrides, "proposal_scale", d.chain.proposal_scale);
  d.chain.hmc_step = param_double(overrides, "hmc_step", d.chain.hmc_step);
  d.chain.hmc_leaps = static_cast<int>(param_int(overrides, "hmc_leaps", d.chain.hmc_leaps));
  d.search.validate();
  d.chain.validate();
  return d;
}

double run_once(const Scenario& scenario, const std::string& method, std::size_t t, const MethodDefaults& settings,
                Rng& rng) {
  const Problem& problem = scenario.problem;
  if (method == "ds") return direct_sample_estimate(*problem.target, problem.f, t, rng);
  if (method == "rs") return rejection_estimate(problem, rejection_log_envelope(problem), t, rng).estimate;
  if (method == "is") return is_estimate(problem, t, rng, settings.weights).estimate;
  if (method == "gis") return gis_estimate(problem, settings.search, t, rng, settings.weights).estimate;
  if (method == "met") return metropolis_estimate(problem, t, settings.chain, rng);
  if (method == "gibbs") return gibbs_estimate(problem, t, settings.chain, rng);
  if (method == "hmc") return hmc_estimate(problem, t, settings.chain, rng);
  if (method == "pf") return particle_filter_estimate(require_kalman(scenario, method), t, rng);
  if (method == "gis-dyn") return gis_dynamic_estimate(require_kalman(scenario, method), settings.search, t, rng);
  throw std::invalid_argument("unknown method: " + method);
}

ScenarioStats summarize(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw std::invalid_argument("summarize: no estimates");
  const auto reps = static_cast<long double>(estimates.size());
  long double sum = 0.0L;
  for (const double e : estimates) sum += e;
  const long double mean = sum / reps;
  long double spread = 0.0L;
  long double error = 0.0L;
  for (const double e : estimates) {
    spread += (e - mean) * (e - mean);
    error += (e - truth) * (e - truth);
  }
  ScenarioStats s;
  s.reps = estimates.size();
  s.truth = truth;
  s.mean = static_cast<double>(mean);
  s.bias = std::fabs(s.mean - truth);
  s.stdev = static_cast<double>(std::sqrt(spread / reps));
  s.rmse = static_cast<double>(std::sqrt(error / reps));
  return s;
}

std::vector<double> run_estimates(const RunSpec& spec, bool parallel) {
  spec.validate();
  const Scenario scenario = make_scenario(spec.scenario, spec.overrides);
  const MethodDefaults settings = resolve_defaults(scenario, spec.overrides);
  const auto reps = static_cast<long long>(spec.reps);
  std::vector<double> estimates(spec.reps);
  std::vector<std::exception_ptr> errors(spec.reps);

  const auto one = [&](long long r) {
    try {
      Rng rng = stream_for(spec.seed, static_cast<std::uint64_t>(r));
      const double e = run_once(scenario, spec.method, spec.t, settings, rng);
      if (!std::isfinite(e)) throw std::runtime_error("non-finite estimate");
      estimates[r] = e;
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long r = 0; r < reps; ++r) one(r);
  } else {
    for (long long r = 0; r < reps; ++r) one(r);
  }

  for (std::size_t r = 0; r < errors.size(); ++r) {
    if (!errors[r]) continue;
    const std::string where = spec.scenario + "/" + spec.method + " repetition " + std::to_string(r);
    try {
      std::rethrow_exception(errors[r]);
    } catch (const std::exception& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
  }
  return estimates;
}

namespace {

ScenarioStats run_impl(const RunSpec& spec, bool parallel) {
  const auto estimates = run_estimates(spec, parallel);
  const Scenario scenario = make_scenario(spec.scenario, spec.overrides);
  ScenarioStats s = summarize(estimates, truth(scenario));
  s.scenario = spec.scenario;
  s.method = spec.method;
  s.n_dim = scenario.n_dim();
  s.t = spec.t;
  s.seed = spec.seed;
  return s;
}

}  // namespace

ScenarioStats run(const RunSpec& spec) { return run_impl(spec, true); }
ScenarioStats run_serial(const RunSpec& spec) { return run_impl(spec, false); }

double truth(const Scenario& scenario) { return scenario.truth; }

std::vector<ScenarioStats> sweep(const RunSpec& base, const std::string& axis, std::span<const double> values) {
  if (axis != "t" && axis != "n" && axis != "sigma_q") {
    throw std::invalid_argument("sweep axis must be t, n or sigma_q, got " + axis);
  }
  std::vector<ScenarioStats> rows;
  for (const double v : values) {
    RunSpec spec = base;
    if (axis == "t") {
      spec.t = to_count(v, "t");
    } else if (axis == "n") {
      spec.overrides["n"] = std::to_string(to_count(v, "n"));
    } else {
      spec.overrides["sigma_q"] = format_double(v);
    }
    rows.push_back(run(spec));
  }
  return rows;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("format must be csv or json, got " + name);
}

void write_stats(std::ostream& out, std::span<const ScenarioStats> rows, Format format) {
  if (format == Format::Csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
      out << r.scenario << ',' << r.method << ',' << r.n_dim << ',' << r.t << ',' << r.reps << ',' << r.seed << ','
          << format_double(r.truth) << ',' << format_double(r.mean) << ',' << format_double(r.bias) << ','
          << format_double(r.stdev) << ',' << format_double(r.rmse) << '\n';
    }
    return;
  }
  // Written by hand so every float keeps exactly 17 significant digits.
  const auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i == 0 ? "\n" : ",\n") << "  {\"scenario\": " << str(r.scenario) << ", \"method\": " << str(r.method)
        << ", \"n_dim\": " << r.n_dim << ", \"t\": " << r.t << ", \"reps\": " << r.reps << ", \"seed\": " << r.seed
        << ", \"truth\": " << format_double(r.truth) << ", \"mean\": " << format_double(r.mean)
        << ", \"bias\": " << format_double(r.bias) << ", \"stdev\": " << format_double(r.stdev)
        << ", \"rmse\": " << format_double(r.rmse) << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void export_stats(const std::string& path, std::span<const ScenarioStats> rows, Format format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_stats(out, rows, format);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

namespace {

// Accepts subnormals, which std::stod rejects as out of range.
double parse_real(const std::string& cell) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || end != cell.data() + cell.size()) throw std::invalid_argument("bad number '" + cell + "'");
  return v;
}

}  // namespace

std::vector<ScenarioStats> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw std::runtime_error("missing stats CSV header");
  std::vector<ScenarioStats> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(trim(line));
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 11 columns");
    ScenarioStats r;
    try {
      r.scenario = cells[0];
      r.method = cells[1];
      r.n_dim = std::stoull(cells[2]);
      r.t = std::stoull(cells[3]);
      r.reps = std::stoull(cells[4]);
      r.seed = std::stoull(cells[5]);
      r.truth = parse_real(cells[6]);
      r.mean = parse_real(cells[7]);
      r.bias = parse_real(cells[8]);
      r.stdev = parse_real(cells[9]);
      r.rmse = parse_real(cells[10]);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Params parse_config(std::istream& in) {
  Params params;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos || trim(s.substr(0, eq)).empty()) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key=value");
    }
    params[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  return params;
}

Params read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  try {
    return parse_config(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace gis
