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

#include "gis/kalman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace gis {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double log_normal(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (kLog2Pi + std::log(var) + d * d / var);
}

}  // namespace

void KalmanModel::validate() const {
  if (!(sigma_s > 0.0) || !(sigma_o > 0.0)) throw std::invalid_argument("KalmanModel: noise scales must be positive");
  if (observations.empty()) throw std::invalid_argument("KalmanModel: no observations");
}

GaussianMoments kalman_posterior(const KalmanModel& model) {
  model.validate();
  const double var_s = model.sigma_s * model.sigma_s;
  const double var_o = model.sigma_o * model.sigma_o;
  double mean = 0.0;
  double var = 0.0;
  for (double z : model.observations) {
    var += var_s;  // predict
    const double gain = var / (var + var_o);
    mean += gain * (z - mean);
    var *= 1.0 - gain;
  }
  return {mean, var};
}

KalmanPrior::KalmanPrior(const KalmanModel& model) : steps_(model.steps()), var_s_(model.sigma_s * model.sigma_s) {
  model.validate();
}

double KalmanPrior::log_mass(std::span<const double> x) const {
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < steps_; ++k) {
    total += log_normal(x[k], prev, var_s_);
    prev = x[k];
  }
  return total;
}

void KalmanPrior::sample(Rng& rng, std::span<double> out) const {
  std::normal_distribution<double> normal;
  const double sd = std::sqrt(var_s_);
  double prev = 0.0;
  for (std::size_t k = 0; k < steps_; ++k) {
    out[k] = prev + sd * normal(rng);
    prev = out[k];
  }
}

void KalmanPrior::grad_log(std::span<const double> x, std::span<double> out) const {
  for (std::size_t k = 0; k < steps_; ++k) {
    const double prev = k == 0 ? 0.0 : x[k - 1];
    out[k] = -(x[k] - prev) / var_s_;
    if (k + 1 < steps_) out[k] += (x[k + 1] - x[k]) / var_s_;
  }
}

KalmanPosterior::KalmanPosterior(const KalmanModel& model)
    : prior_(model), z_(model.observations), var_o_(model.sigma_o * model.sigma_o) {}

double KalmanPosterior::log_mass(std::span<const double> x) const {
  double total = prior_.log_mass(x);
  for (std::size_t k = 0; k < z_.size(); ++k) total += log_normal(z_[k], x[k], var_o_);
  return total;
}

void KalmanPosterior::grad_log(std::span<const double> x, std::span<double> out) const {
  prior_.grad_log(x, out);
  for (std::size_t k = 0; k < z_.size(); ++k) out[k] += (z_[k] - x[k]) / var_o_;
}

Problem make_kalman_problem(const KalmanModel& model) {
  return Problem{std::make_shared<KalmanPosterior>(model), std::make_shared<KalmanPrior>(model),
                 Objective::coordinate(model.steps() - 1)};
}

KalmanModel simulate_kalman(double sigma_s, double sigma_o, std::size_t steps, Rng& rng) {
  KalmanModel model{sigma_s, sigma_o, Vec(steps)};
  std::normal_distribution<double> normal;
  double x = 0.0;
  for (auto& z : model.observations) {
    x += sigma_s * normal(rng);
    z = x + sigma_o * normal(rng);
  }
  model.validate();
  return model;
}

double particle_filter_estimate(const KalmanModel& model, std::size_t n_particles, Rng& rng,
                                const std::function<double(double)>& g) {
  model.validate();
  if (n_particles == 0) throw std::invalid_argument("particle_filter_estimate: need at least one particle");
  const double var_o = model.sigma_o * model.sigma_o;
  std::normal_distribution<double> normal;
  Vec particles(n_particles, 0.0);
  Vec resampled(n_particles);
  std::vector<double> log_w(n_particles);
  std::vector<double> w(n_particles);
  double estimate = 0.0;
  for (std::size_t step = 0; step < model.steps(); ++step) {
    for (double& x : particles) x += model.sigma_s * normal(rng);
    for (std::size_t i = 0; i < n_particles; ++i) log_w[i] = log_normal(model.observations[step], particles[i], var_o);
    const double peak = *std::max_element(log_w.begin(), log_w.end());
    if (!std::isfinite(peak)) throw std::domain_error("particle filter: all weights are zero");
    double total = 0.0;
    for (std::size_t i = 0; i < n_particles; ++i) {
      w[i] = std::exp(log_w[i] - peak);
      total += w[i];
    }
    if (step + 1 == model.steps()) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n_particles; ++i) acc += w[i] * g(particles[i]);
      estimate = acc / total;
      break;
    }
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    for (auto& x : resampled) x = particles[pick(rng)];
    particles.swap(resampled);
  }
  return estimate;
}

double gis_dynamic_estimate(const KalmanModel& model, const SearchConfig& cfg, std::size_t n, Rng& rng) {
  const Problem problem = make_kalman_problem(model);
  return gis_estimate(problem, cfg, n, rng, WeightMode::Indirect).estimate;
}

}  // namespace gis
