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

#include "gis/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gis/distributions.hpp"

namespace gis {
namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

double gaussian_entropy(std::size_t n) { return 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi * std::numbers::e); }

// Proposal-mismatch Gaussian experiment: P = N(0, I), Q = N(0, sigma_q I), f = -log p.
Scenario gaussian_scenario(const std::string& name, std::size_t n, double sigma_q) {
  if (n < 1) throw std::invalid_argument("scenario dimension must be at least 1");
  auto p = make_gaussian(n, 0.0, 1.0);
  auto q = make_gaussian(n, 0.0, sigma_q);
  Scenario s{name, "N(0,I) target, N(0," + format_number(sigma_q) + " I) proposal, f = -log p, n = " + std::to_string(n),
             Problem{p, q, Objective::neg_log_prob(p)}};
  s.truth = gaussian_entropy(n);
  s.truth_source = "closed-form differential entropy";
  s.defaults.search = default_search(n);
  return s;
}

Scenario grid_scenario(const std::string& name, std::string description, std::shared_ptr<GridPmf> p,
                       std::shared_ptr<GridPmf> q, Objective f) {
  Scenario s{name, std::move(description), Problem{p, q, std::move(f)}};
  s.truth = grid_expectation(*p, s.problem.f);
  s.truth_source = "exact grid summation";
  s.defaults.search = default_search(p->dim());
  return s;
}

Scenario table1() {
  const auto domain = GridDomain::cube(2, -10, 10);
  auto p = make_discretized_gaussian(domain, {0.0, 0.0}, {1.0, 1.0});
  auto q = make_discretized_gaussian(domain, {0.0, 0.0}, {36.0, 36.0});
  return grid_scenario("table1", "discretized N(0,I) on the 21x21 grid [-10,10]^2, proposal N(0,36 I), f = -log p",
                       p, q, Objective::neg_log_prob(p));
}

Scenario table5() {
  auto p = make_mixture({{0.5, {0.0, 0.0}, {1.0, 1.0}}, {0.5, {16.0, 16.0}, {1.0, 1.0}}});
  auto q = make_gaussian(2, 0.0, 36.0);
  Scenario s{"table5", "equal mixture of N([0,0],I) and N([16,16],I), proposal N(0,36 I), f = |x|^2",
             Problem{p, q, Objective::squared_norm()}};
  // E|x|^2 = sum_c w_c (|mu_c|^2 + tr Sigma_c)
  s.truth = 0.5 * 2.0 + 0.5 * (512.0 + 2.0);
  s.truth_source = "closed-form mixture second moment";
  s.defaults.search = default_search(2);
  return s;
}

Scenario table6() {
  KalmanModel model{1.0, 1.0, kalman_catalog_observations()};
  Scenario s{"table6", "random-walk state, sigma_s = sigma_o = 1, six fixed observations, f = final state",
             make_kalman_problem(model)};
  s.truth = kalman_posterior(model).mean;
  s.truth_source = "Kalman filter recursion";
  s.defaults.search = default_search(model.steps());
  s.kalman = std::move(model);
  return s;
}

// One-dimensional grids with different relations between P, Q and f.
Scenario fig6(char variant) {
  const auto domain = GridDomain::cube(1, -25, 25);
  const std::string name = std::string("fig6-") + variant;
  switch (variant) {
    case 'a': {
      auto p = make_discretized_gaussian(domain, {0.0}, {4.0});
      auto q = make_discretized_gaussian(domain, {0.0}, {36.0});
      return grid_scenario(name, "P = N(0,2^2), wide Q = N(0,6^2), f = -log p", p, q, Objective::neg_log_prob(p));
    }
    case 'b': {
      auto p = make_discretized_gaussian(domain, {0.0}, {4.0});
      auto q = make_discretized_gaussian(domain, {0.0}, {4.0});
      return grid_scenario(name, "Q = P = N(0,2^2), f = x^2 puts |fP| on the flanks", p, q, Objective::squared_norm());
    }
    case 'c': {
      auto p = make_discretized_gaussian(domain, {-4.0}, {4.0});
      auto q = make_discretized_gaussian(domain, {6.0}, {16.0});
      return grid_scenario(name, "P = N(-4,2^2), offset Q = N(6,4^2), f = 1", p, q, Objective::constant(1.0));
    }
    case 'd': {
      const auto density = make_mixture({{0.5, {-8.0}, {2.25}}, {0.5, {8.0}, {2.25}}});
      auto p = make_discretized(domain, *density);
      auto q = make_discretized_gaussian(domain, {0.0}, {25.0});
      return grid_scenario(name, "bimodal P = mixture of N(-8,1.5^2), N(8,1.5^2), Q = N(0,5^2), f = x + 10", p, q,
                           Objective("x_plus_10", [](std::span<const double> x) { return x[0] + 10.0; }));
    }
    default:
      throw std::invalid_argument("unknown scenario: " + name);
  }
}

// Small grids used by the exhaustive weight and unbiasedness checks.
Scenario oracle_grid(int half_width) {
  const auto domain = GridDomain::cube(2, -half_width, half_width);
  auto p = make_discretized_gaussian(domain, {0.5, -0.5}, {2.0, 3.0});
  auto q = make_discretized_gaussian(domain, {0.0, 0.0}, {9.0, 9.0});
  const std::string side = std::to_string(2 * half_width + 1);
  return grid_scenario("grid" + side, "discretized N([0.5,-0.5], diag(2,3)) on a " + side + "x" + side +
                                          " grid, proposal N(0, 9 I), f = -log p",
                       p, q, Objective::neg_log_prob(p));
}

}  // namespace

double param_double(const Params& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::size_t used = 0;
  const double v = std::stod(it->second, &used);
  if (used != it->second.size()) throw std::invalid_argument("parameter " + key + " is not a number: " + it->second);
  return v;
}

long long param_int(const Params& params, const std::string& key, long long fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::size_t used = 0;
  const long long v = std::stoll(it->second, &used);
  if (used != it->second.size()) throw std::invalid_argument("parameter " + key + " is not an integer: " + it->second);
  return v;
}

std::string param_string(const Params& params, const std::string& key, const std::string& fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

SearchConfig default_search(std::size_t n) {
  const double dim = static_cast<double>(n);
  return SearchConfig{dim / 2.6, static_cast<int>(10 * n), 1.0};
}

double grid_expectation(const Distribution& p, const Objective& f) {
  const GridDomain* grid = p.grid();
  if (grid == nullptr) throw std::invalid_argument("grid_expectation: distribution is not grid-supported");
  const auto& pmf = static_cast<const GridPmf&>(p);
  double total = 0.0;
  Vec x(grid->dim());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double prob = pmf.prob_at(i);
    if (prob == 0.0) continue;
    grid->to_real(grid->point_at(i), x);
    total += prob * f(x);
  }
  return total;
}

std::shared_ptr<GridPmf> make_discretized(const GridDomain& domain, const Distribution& density) {
  if (density.dim() != domain.dim()) throw std::invalid_argument("make_discretized: dimension mismatch");
  std::vector<double> log_masses(domain.size());
  Vec x(domain.dim());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    domain.to_real(domain.point_at(i), x);
    log_masses[i] = density.log_mass(x);
  }
  return std::make_shared<GridPmf>(domain, std::move(log_masses));
}

const Vec& kalman_catalog_observations() {
  // One draw from the generative model (sigma_s = sigma_o = 1), frozen.
  static const Vec z{-1.314775656178016,  -0.18865671491188724, 0.47991012041411096,
                     0.095403905421907131, -1.0100995442439851, -0.76801553470882633};
  return z;
}

std::vector<std::string> scenario_names() {
  return {"table1", "table2-n1", "table2-n3", "table3", "table4", "table5", "table6",
          "fig6-a", "fig6-b",    "fig6-c",    "fig6-d", "grid7",  "grid9"};
}

Scenario make_scenario(const std::string& name, const Params& overrides) {
  const auto dim = [&](long long fallback) {
    const long long n = param_int(overrides, "n", fallback);
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    return static_cast<std::size_t>(n);
  };
  const double sigma_q = param_double(overrides, "sigma_q", 36.0);
  if (!(sigma_q > 0.0)) throw std::invalid_argument("sigma_q must be positive");

  Scenario s = [&]() -> Scenario {
    if (name == "table1") return table1();
    if (name == "table2-n1") return gaussian_scenario(name, dim(1), sigma_q);
    if (name == "table2-n3") return gaussian_scenario(name, dim(3), sigma_q);
    if (name == "table3") return gaussian_scenario(name, dim(5), sigma_q);
    if (name == "table4") return gaussian_scenario(name, dim(5), sigma_q);
    if (name == "table5") return table5();
    if (name == "table6") return table6();
    if (name.size() == 6 && name.starts_with("fig6-")) return fig6(name.back());
    if (name == "grid7") return oracle_grid(3);
    if (name == "grid9") return oracle_grid(4);
    throw std::invalid_argument("unknown scenario: " + name);
  }();
  return s;
}

}  // namespace gis
