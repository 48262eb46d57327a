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

#ifndef GIS_KALMAN_HPP
#define GIS_KALMAN_HPP

#include <cstddef>
#include <functional>

#include "gis/estimators.hpp"
#include "gis/model.hpp"

namespace gis {

/// Scalar random-walk state with noisy observations:
/// X_1 ~ N(0, s^2), X_k | X_{k-1} ~ N(x_{k-1}, s^2), Z_k | X_k ~ N(x_k, o^2).
struct KalmanModel {
  double sigma_s = 1.0;
  double sigma_o = 1.0;
  Vec observations;

  std::size_t steps() const { return observations.size(); }
  void validate() const;
};

struct GaussianMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Exact filtering distribution of the final state given every observation.
GaussianMoments kalman_posterior(const KalmanModel& model);

/// Joint prior over the state trajectory (x_1, ..., x_t).
class KalmanPrior final : public Distribution {
 public:
  explicit KalmanPrior(const KalmanModel& model);

  std::size_t dim() const override { return steps_; }
  double log_mass(std::span<const double> x) const override;
  std::optional<double> log_normalizer() const override { return 0.0; }
  bool has_sampler() const override { return true; }
  using Distribution::sample;
  void sample(Rng& rng, std::span<double> out) const override;
  bool has_gradient() const override { return true; }
  void grad_log(std::span<const double> x, std::span<double> out) const override;

 private:
  std::size_t steps_;
  double var_s_;
};

/// Trajectory posterior up to its normalizer: prior times observation likelihood.
class KalmanPosterior final : public Distribution {
 public:
  explicit KalmanPosterior(const KalmanModel& model);

  std::size_t dim() const override { return prior_.dim(); }
  double log_mass(std::span<const double> x) const override;
  bool has_gradient() const override { return true; }
  void grad_log(std::span<const double> x, std::span<double> out) const override;

 private:
  KalmanPrior prior_;
  Vec z_;
  double var_o_;
};

/// Target = trajectory posterior, proposal = prior, f = final state. Indirect
/// weights on this problem are the observation likelihoods (likelihood weighting).
Problem make_kalman_problem(const KalmanModel& model);

/// Draw a trajectory and its observations from the generative model.
KalmanModel simulate_kalman(double sigma_s, double sigma_o, std::size_t steps, Rng& rng);

/// Bootstrap particle filter estimate of E[g(x_t) | z_1..z_t]; multinomial resampling every step.
double particle_filter_estimate(const KalmanModel& model, std::size_t n_particles, Rng& rng,
                                const std::function<double(double)>& g = [](double x) { return x; });

/// Indirect greedy importance sampling over the whole trajectory.
double gis_dynamic_estimate(const KalmanModel& model, const SearchConfig& cfg, std::size_t n, Rng& rng);

}  // namespace gis

#endif  // GIS_KALMAN_HPP
