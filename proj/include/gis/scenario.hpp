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

#ifndef GIS_SCENARIO_HPP
#define GIS_SCENARIO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gis/baselines.hpp"
#include "gis/estimators.hpp"
#include "gis/kalman.hpp"
#include "gis/model.hpp"
#include "gis/search_config.hpp"

namespace gis {

/// Free-form key=value parameters (scenario shape and method settings).
using Params = std::map<std::string, std::string>;

double param_double(const Params& params, const std::string& key, double fallback);
long long param_int(const Params& params, const std::string& key, long long fallback);
std::string param_string(const Params& params, const std::string& key, const std::string& fallback);

struct MethodDefaults {
  SearchConfig search;
  WeightMode weights = WeightMode::Indirect;
  ChainConfig chain;
};

/// One experiment setting: P, Q, f, its exact expected value and method defaults.
struct Scenario {
  Scenario(std::string name_, std::string description_, Problem problem_)
      : name(std::move(name_)), description(std::move(description_)), problem(std::move(problem_)) {}

  std::string name;
  std::string description;
  Problem problem;
  double truth = 0.0;
  /// How `truth` was obtained.
  std::string truth_source;
  MethodDefaults defaults;
  /// Present for the dynamic model only.
  std::optional<KalmanModel> kalman;

  std::size_t n_dim() const { return problem.dim(); }
};

/// Names accepted by make_scenario.
std::vector<std::string> scenario_names();

/// Build a catalog scenario. Recognized overrides: n (dimension) for the
/// Gaussian scenarios and sigma_q (proposal variance, Sigma_Q = sigma_q I).
Scenario make_scenario(const std::string& name, const Params& overrides = {});

/// Search settings used by the continuous experiments: eps = 1, m = 10n, b = n / 2.6.
SearchConfig default_search(std::size_t n);

/// Sum of f(x) P(x) over every node of a grid-supported, normalized distribution.
double grid_expectation(const Distribution& p, const Objective& f);

/// Discretize any density onto a grid: density at each node, normalized by summation.
std::shared_ptr<GridPmf> make_discretized(const GridDomain& domain, const Distribution& density);

/// The six fixed observations of the dynamic-model scenario (sigma_s = sigma_o = 1).
const Vec& kalman_catalog_observations();

}  // namespace gis

#endif  // GIS_SCENARIO_HPP
