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

#ifndef GIS_BENCH_HPP
#define GIS_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gis/rng.hpp"
#include "gis/scenario.hpp"

namespace gis {

/// One (scenario, method, t) cell to estimate `reps` times.
struct RunSpec {
  std::string scenario;
  std::string method;
  std::size_t t = 100;
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  /// Scenario shape (n, sigma_q) and method settings (b, m, eps, weights, burn_in, ...).
  Params overrides;

  void validate() const;
};

struct ScenarioStats {
  std::string scenario;
  std::string method;
  std::size_t n_dim = 0;
  std::size_t t = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double truth = 0.0;
  double mean = 0.0;
  double bias = 0.0;
  double stdev = 0.0;
  double rmse = 0.0;

  bool operator==(const ScenarioStats&) const = default;
};

/// ds, rs, is, gis, met, gibbs, hmc, pf, gis-dyn.
std::vector<std::string> method_names();

/// Method settings for a scenario after applying overrides on top of its defaults.
MethodDefaults resolve_defaults(const Scenario& scenario, const Params& overrides);

/// One repetition of `method` with sample size t.
double run_once(const Scenario& scenario, const std::string& method, std::size_t t, const MethodDefaults& settings,
                Rng& rng);

/// Stats of repeated estimates against `truth`; population stdev.
ScenarioStats summarize(std::span<const double> estimates, double truth);

/// Repetitions run concurrently; the result does not depend on the thread count.
ScenarioStats run(const RunSpec& spec);
/// Same computation on the calling thread only.
ScenarioStats run_serial(const RunSpec& spec);

/// The per-repetition estimates behind run(), in repetition order.
std::vector<double> run_estimates(const RunSpec& spec, bool parallel = true);

double truth(const Scenario& scenario);

/// One run per value of `axis` (t, n or sigma_q).
std::vector<ScenarioStats> sweep(const RunSpec& base, const std::string& axis, std::span<const double> values);

enum class Format { Csv, Json };
Format parse_format(const std::string& name);

void write_stats(std::ostream& out, std::span<const ScenarioStats> rows, Format format);
/// Throws std::runtime_error naming the path when it cannot be written.
void export_stats(const std::string& path, std::span<const ScenarioStats> rows, Format format);
std::vector<ScenarioStats> parse_csv(std::istream& in);

/// Flat key=value config; blank lines and lines starting with '#' are skipped.
Params parse_config(std::istream& in);
Params read_config(const std::string& path);

}  // namespace gis

#endif  // GIS_BENCH_HPP
