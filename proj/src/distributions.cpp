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

#include "gis/distributions.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gis {
namespace {

double log_sum_exp(std::span<const double> terms) {
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (peak == -std::numeric_limits<double>::infinity()) return peak;
  double total = 0.0;
  for (double t : terms) total += std::exp(t - peak);
  return peak + std::log(total);
}

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

}  // namespace

DiagonalGaussian::DiagonalGaussian(Vec mean, Vec variances) : mean_(std::move(mean)), var_(std::move(variances)) {
  if (mean_.empty()) throw std::invalid_argument("DiagonalGaussian: empty mean");
  if (mean_.size() != var_.size()) throw std::invalid_argument("DiagonalGaussian: mean/variance size mismatch");
  log_norm_const_ = 0.0;
  for (double v : var_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("DiagonalGaussian: degenerate covariance");
    log_norm_const_ -= 0.5 * (kLog2Pi + std::log(v));
  }
}

double DiagonalGaussian::log_mass(std::span<const double> x) const {
  double q = 0.0;
  for (std::size_t k = 0; k < mean_.size(); ++k) {
    const double d = x[k] - mean_[k];
    q += d * d / var_[k];
  }
  return log_norm_const_ - 0.5 * q;
}

double DiagonalGaussian::log_marginal(std::size_t axis, double value) const {
  const double d = value - mean_[axis];
  return -0.5 * (kLog2Pi + std::log(var_[axis]) + d * d / var_[axis]);
}

void DiagonalGaussian::sample(Rng& rng, std::span<double> out) const {
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < mean_.size(); ++k) out[k] = mean_[k] + std::sqrt(var_[k]) * normal(rng);
}

void DiagonalGaussian::grad_log(std::span<const double> x, std::span<double> out) const {
  for (std::size_t k = 0; k < mean_.size(); ++k) out[k] = -(x[k] - mean_[k]) / var_[k];
}

double DiagonalGaussian::sample_conditional(std::size_t axis, std::span<const double>, Rng& rng) const {
  return mean_[axis] + std::sqrt(var_[axis]) * std::normal_distribution<double>()(rng);
}

GaussianMixture::GaussianMixture(const std::vector<MixtureComponent>& components) {
  if (components.empty()) throw std::invalid_argument("GaussianMixture: empty component list");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0)) throw std::invalid_argument("GaussianMixture: weights must be positive");
    total += c.weight;
    components_.emplace_back(c.mean, c.variances);
    if (components_.back().dim() != components_.front().dim()) {
      throw std::invalid_argument("GaussianMixture: component dimension mismatch");
    }
    log_weights_.push_back(std::log(c.weight));
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("GaussianMixture: weights must sum to 1");
}

double GaussianMixture::log_mass(std::span<const double> x) const {
  std::vector<double> terms(components_.size());
  for (std::size_t c = 0; c < components_.size(); ++c) terms[c] = log_weights_[c] + components_[c].log_mass(x);
  return log_sum_exp(terms);
}

void GaussianMixture::sample(Rng& rng, std::span<double> out) const {
  std::vector<double> w(components_.size());
  for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::exp(log_weights_[c]);
  const auto c = std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng);
  components_[c].sample(rng, out);
}

void GaussianMixture::grad_log(std::span<const double> x, std::span<double> out) const {
  std::vector<double> terms(components_.size());
  for (std::size_t c = 0; c < components_.size(); ++c) terms[c] = log_weights_[c] + components_[c].log_mass(x);
  const double log_total = log_sum_exp(terms);
  std::fill(out.begin(), out.end(), 0.0);
  Vec g(dim());
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const double r = std::exp(terms[c] - log_total);
    components_[c].grad_log(x, g);
    for (std::size_t k = 0; k < g.size(); ++k) out[k] += r * g[k];
  }
}

std::vector<double> GaussianMixture::conditional_weights(std::size_t axis, std::span<const double> x) const {
  std::vector<double> terms(components_.size());
  for (std::size_t c = 0; c < components_.size(); ++c) {
    double t = log_weights_[c];
    for (std::size_t k = 0; k < dim(); ++k) {
      if (k != axis) t += components_[c].log_marginal(k, x[k]);
    }
    terms[c] = t;
  }
  const double log_total = log_sum_exp(terms);
  for (double& t : terms) t = std::exp(t - log_total);
  return terms;
}

double GaussianMixture::sample_conditional(std::size_t axis, std::span<const double> x, Rng& rng) const {
  const auto w = conditional_weights(axis, x);
  const auto c = std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng);
  return components_[c].sample_conditional(axis, x, rng);
}

std::shared_ptr<DiagonalGaussian> make_gaussian(std::size_t n, double mean, double cov_scale) {
  return make_gaussian(Vec(n, mean), cov_scale);
}

std::shared_ptr<DiagonalGaussian> make_gaussian(Vec mean, double cov_scale) {
  if (!(cov_scale > 0.0)) throw std::invalid_argument("make_gaussian: cov_scale must be positive");
  const std::size_t n = mean.size();
  return std::make_shared<DiagonalGaussian>(std::move(mean), Vec(n, cov_scale));
}

std::shared_ptr<GaussianMixture> make_mixture(const std::vector<MixtureComponent>& components) {
  return std::make_shared<GaussianMixture>(components);
}

std::shared_ptr<GridPmf> make_discretized_gaussian(const GridDomain& domain, const Vec& mean, const Vec& variances) {
  if (mean.size() != domain.dim()) throw std::invalid_argument("make_discretized_gaussian: dimension mismatch");
  const DiagonalGaussian density(mean, variances);
  std::vector<double> log_masses(domain.size());
  Vec x(domain.dim());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    domain.to_real(domain.point_at(i), x);
    log_masses[i] = density.log_mass(x);
  }
  return std::make_shared<GridPmf>(domain, std::move(log_masses));
}

double max_log_ratio(const DiagonalGaussian& p, const DiagonalGaussian& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("max_log_ratio: dimension mismatch");
  double total = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) {
    const double vp = p.variances()[k];
    const double vq = q.variances()[k];
    const double mp = p.mean()[k];
    const double mq = q.mean()[k];
    if (vq < vp || (vq == vp && mq != mp)) {
      throw std::domain_error("max_log_ratio: density ratio is unbounded");
    }
    // Concave quadratic in x; its stationary point gives the supremum.
    const double x = vq == vp ? mp : (mq / vq - mp / vp) / (1.0 / vq - 1.0 / vp);
    total += p.log_marginal(k, x) - q.log_marginal(k, x);
  }
  return total;
}

}  // namespace gis
