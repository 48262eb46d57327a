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

#ifndef GIS_BASELINES_HPP
#define GIS_BASELINES_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include "gis/model.hpp"

namespace gis {

struct ChainConfig {
  /// States discarded before the t recorded ones.
  std::size_t burn_in = 0;
  /// Start here instead of at a draw from the proposal.
  std::optional<Vec> init_point;
  /// Per-axis standard deviation of the continuous Metropolis proposal (covariance I/2).
  double proposal_scale = std::sqrt(0.5);
  double hmc_step = 0.1;
  int hmc_leaps = 20;

  void validate() const;
};

/// Mean of f over t exact draws from the target.
double direct_sample_estimate(const Distribution& target, const Objective& f, std::size_t t, Rng& rng);

struct RejectionResult {
  double estimate = 0.0;
  std::size_t proposals = 0;
  std::size_t accepted = 0;

  double acceptance_rate() const { return static_cast<double>(accepted) / static_cast<double>(proposals); }
};

/// Mean of f over t draws accepted with probability p~(x) / (M q(x)).
/**
 * log_envelope is log M. A draw whose ratio exceeds one proves the envelope
 * invalid and raises std::domain_error.
 */
RejectionResult rejection_estimate(const Problem& problem, double log_envelope, std::size_t t, Rng& rng,
                                   std::size_t max_proposals = 1'000'000'000);

/// log M for rejection sampling: sup log(p~/q) with a 1% margin. Exhaustive on
/// grids; closed form for Gaussian or Gaussian-mixture targets under a Gaussian proposal.
double rejection_log_envelope(const Problem& problem);

/// Random-walk Metropolis; mean of f over the t states after burn-in.
/**
 * On grids the proposal picks one of the 2n axis neighbors uniformly and an
 * off-grid pick is rejected. On R^n it adds N(0, proposal_scale^2 I) noise.
 * Rejected moves repeat the current state.
 */
double metropolis_estimate(const Problem& problem, std::size_t t, const ChainConfig& cfg, Rng& rng);

/// Systematic-scan Gibbs sampling from the target's full conditionals.
double gibbs_estimate(const Problem& problem, std::size_t t, const ChainConfig& cfg, Rng& rng);

/// H(x, p) = -log p~(x) + |p|^2 / 2.
double hamiltonian(const Distribution& target, std::span<const double> x, std::span<const double> p);

/// `leaps` leapfrog steps of size `step` with unit mass, in place.
void leapfrog(const Distribution& target, Vec& x, Vec& p, double step, int leaps);

/// Hybrid Monte Carlo; mean of f over the t states after burn-in.
double hmc_estimate(const Problem& problem, std::size_t t, const ChainConfig& cfg, Rng& rng);

}  // namespace gis

#endif  // GIS_BASELINES_HPP
