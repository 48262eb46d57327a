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

#include "gis/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "gis/distributions.hpp"

namespace gis {
namespace {

Vec initial_state(const Problem& problem, const ChainConfig& cfg, Rng& rng) {
  if (cfg.init_point) {
    if (cfg.init_point->size() != problem.dim()) throw std::invalid_argument("chain init point has wrong dimension");
    return *cfg.init_point;
  }
  if (!problem.proposal->has_sampler()) throw std::logic_error("chain initialization needs a samplable proposal");
  return problem.proposal->sample(rng);
}

// log M with the 1% margin.
constexpr double kEnvelopeMargin = 0.009950330853168083;  // log(1.01)

}  // namespace

void ChainConfig::validate() const {
  if (!(proposal_scale > 0.0)) throw std::invalid_argument("ChainConfig: proposal_scale must be positive");
  if (!(hmc_step > 0.0)) throw std::invalid_argument("ChainConfig: hmc_step must be positive");
  if (hmc_leaps < 1) throw std::invalid_argument("ChainConfig: hmc_leaps must be at least 1");
}

double direct_sample_estimate(const Distribution& target, const Objective& f, std::size_t t, Rng& rng) {
  if (!target.has_sampler()) throw std::logic_error("direct sampling needs an exact sampler");
  if (t == 0) throw std::invalid_argument("direct_sample_estimate: t must be positive");
  Vec x(target.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    target.sample(rng, x);
    sum += f(x);
  }
  return sum / static_cast<double>(t);
}

RejectionResult rejection_estimate(const Problem& problem, double log_envelope, std::size_t t, Rng& rng,
                                   std::size_t max_proposals) {
  if (t == 0) throw std::invalid_argument("rejection_estimate: t must be positive");
  const auto& q = *problem.proposal;
  if (!q.has_sampler() || !q.normalized()) throw std::logic_error("rejection sampling needs a normalized samplable proposal");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RejectionResult r;
  Vec x(problem.dim());
  double sum = 0.0;
  while (r.accepted < t) {
    if (r.proposals == max_proposals) throw std::runtime_error("rejection sampling exceeded its proposal budget");
    q.sample(rng, x);
    ++r.proposals;
    const double log_ratio = problem.target->log_mass(x) - log_envelope - q.log_prob(x);
    if (log_ratio > 1e-12) throw std::domain_error("rejection envelope is invalid: p~(x) > M q(x)");
    if (std::log(unif(rng)) < log_ratio) {
      sum += problem.f(x);
      ++r.accepted;
    }
  }
  r.estimate = sum / static_cast<double>(t);
  return r;
}

double rejection_log_envelope(const Problem& problem) {
  const auto& p = *problem.target;
  const auto& q = *problem.proposal;
  if (const GridDomain* grid = p.grid()) {
    double best = -std::numeric_limits<double>::infinity();
    Vec x(grid->dim());
    for (std::size_t i = 0; i < grid->size(); ++i) {
      grid->to_real(grid->point_at(i), x);
      const double lp = p.log_mass(x);
      if (lp == -std::numeric_limits<double>::infinity()) continue;
      best = std::max(best, lp - q.log_prob(x));
    }
    return best + kEnvelopeMargin;
  }
  const auto* gq = dynamic_cast<const DiagonalGaussian*>(&q);
  if (gq == nullptr) throw std::logic_error("no analytic envelope for this proposal");
  if (const auto* gp = dynamic_cast<const DiagonalGaussian*>(&p)) return max_log_ratio(*gp, *gq) + kEnvelopeMargin;
  if (const auto* mix = dynamic_cast<const GaussianMixture*>(&p)) {
    // sum_c w_c N_c / q <= sum_c w_c sup(N_c / q)
    double bound = 0.0;
    for (std::size_t c = 0; c < mix->size(); ++c) bound += mix->weight(c) * std::exp(max_log_ratio(mix->component(c), *gq));
    return std::log(bound) + kEnvelopeMargin;
  }
  throw std::logic_error("no analytic envelope for this target");
}

double metropolis_estimate(const Problem& problem, std::size_t t, const ChainConfig& cfg, Rng& rng) {
  cfg.validate();
  if (t == 0) throw std::invalid_argument("metropolis_estimate: t must be positive");
  const auto& target = *problem.target;
  const std::size_t n = problem.dim();
  const GridDomain* grid = target.grid();
  Vec x = initial_state(problem, cfg, rng);
  Vec y(n);
  double lp_x = target.log_mass(x);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> direction(0, 2 * n - 1);
  std::normal_distribution<double> normal;
  double sum = 0.0;
  for (std::size_t step = 0; step < cfg.burn_in + t; ++step) {
    bool valid = true;
    if (grid != nullptr) {
      const std::size_t d = direction(rng);
      y = x;
      y[d / 2] += (d % 2 == 0 ? -1.0 : 1.0) * grid->spacing();
      valid = grid->from_real(y).has_value();
    } else {
      for (std::size_t k = 0; k < n; ++k) y[k] = x[k] + cfg.proposal_scale * normal(rng);
    }
    if (valid) {
      const double lp_y = target.log_mass(y);
      if (lp_y >= lp_x || std::log(unif(rng)) < lp_y - lp_x) {
        x.swap(y);
        lp_x = lp_y;
      }
    }
    if (step >= cfg.burn_in) sum += problem.f(x);
  }
  return sum / static_cast<double>(t);
}

double gibbs_estimate(const Problem& problem, std::size_t t, const ChainConfig& cfg, Rng& rng) {
  if (t == 0) throw std::invalid_argument("gibbs_estimate: t must be positive");
  const auto& target = *problem.target;
  if (!target.has_conditionals()) throw std::logic_error("Gibbs sampling needs full conditionals");
  Vec x = initial_state(problem, cfg, rng);
  double sum = 0.0;
  for (std::size_t sweep = 0; sweep < cfg.burn_in + t; ++sweep) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = target.sample_conditional(k, x, rng);
    if (sweep >= cfg.burn_in) sum += problem.f(x);
  }
  return sum / static_cast<double>(t);
}

double hamiltonian(const Distribution& target, std::span<const double> x, std::span<const double> p) {
  double kinetic = 0.0;
  for (double v : p) kinetic += v * v;
  return -target.log_mass(x) + 0.5 * kinetic;
}

void leapfrog(const Distribution& target, Vec& x, Vec& p, double step, int leaps) {
  if (!target.has_gradient()) throw std::logic_error("leapfrog needs the log-density gradient");
  Vec g(x.size());
  target.grad_log(x, g);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] += 0.5 * step * g[k];
  for (int l = 0; l < leaps; ++l) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += step * p[k];
    target.grad_log(x, g);
    const double kick = l + 1 < leaps ? step : 0.5 * step;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += kick * g[k];
  }
}

double hmc_estimate(const Problem& problem, std::size_t t, const ChainConfig& cfg, Rng& rng) {
  cfg.validate();
  if (t == 0) throw std::invalid_argument("hmc_estimate: t must be positive");
  const auto& target = *problem.target;
  if (!target.has_gradient()) throw std::logic_error("HMC needs the log-density gradient");
  Vec x = initial_state(problem, cfg, rng);
  Vec x_new(x.size());
  Vec p(x.size());
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double sum = 0.0;
  for (std::size_t it = 0; it < cfg.burn_in + t; ++it) {
    for (double& v : p) v = normal(rng);
    const double h0 = hamiltonian(target, x, p);
    x_new = x;
    leapfrog(target, x_new, p, cfg.hmc_step, cfg.hmc_leaps);
    const double h1 = hamiltonian(target, x_new, p);
    if (std::isfinite(h1) && std::log(unif(rng)) < h0 - h1) x.swap(x_new);
    if (it >= cfg.burn_in) sum += problem.f(x);
  }
  return sum / static_cast<double>(t);
}

}  // namespace gis
