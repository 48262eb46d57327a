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

#ifndef GIS_DISTRIBUTIONS_HPP
#define GIS_DISTRIBUTIONS_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "gis/model.hpp"

namespace gis {

/// Gaussian with diagonal covariance; exact density, sampler, gradient and conditionals.
class DiagonalGaussian final : public Distribution {
 public:
  DiagonalGaussian(Vec mean, Vec variances);

  std::size_t dim() const override { return mean_.size(); }
  double log_mass(std::span<const double> x) const override;
  std::optional<double> log_normalizer() const override { return 0.0; }
  bool has_sampler() const override { return true; }
  using Distribution::sample;
  void sample(Rng& rng, std::span<double> out) const override;
  bool has_gradient() const override { return true; }
  void grad_log(std::span<const double> x, std::span<double> out) const override;
  bool has_conditionals() const override { return true; }
  double sample_conditional(std::size_t axis, std::span<const double> x, Rng& rng) const override;

  const Vec& mean() const { return mean_; }
  const Vec& variances() const { return var_; }
  /// log N(value; mean[axis], var[axis]).
  double log_marginal(std::size_t axis, double value) const;

 private:
  Vec mean_;
  Vec var_;
  double log_norm_const_;
};

struct MixtureComponent {
  double weight;
  Vec mean;
  Vec variances;
};

/// Finite mixture of diagonal Gaussians.
class GaussianMixture final : public Distribution {
 public:
  explicit GaussianMixture(const std::vector<MixtureComponent>& components);

  std::size_t dim() const override { return components_.front().dim(); }
  double log_mass(std::span<const double> x) const override;
  std::optional<double> log_normalizer() const override { return 0.0; }
  bool has_sampler() const override { return true; }
  using Distribution::sample;
  void sample(Rng& rng, std::span<double> out) const override;
  bool has_gradient() const override { return true; }
  void grad_log(std::span<const double> x, std::span<double> out) const override;
  bool has_conditionals() const override { return true; }
  double sample_conditional(std::size_t axis, std::span<const double> x, Rng& rng) const override;

  std::size_t size() const { return components_.size(); }
  const DiagonalGaussian& component(std::size_t c) const { return components_[c]; }
  double weight(std::size_t c) const { return std::exp(log_weights_[c]); }

  /// Normalized component weights of the full conditional of `axis` given the
  /// other coordinates of x (the value of x[axis] is ignored).
  std::vector<double> conditional_weights(std::size_t axis, std::span<const double> x) const;

 private:
  std::vector<DiagonalGaussian> components_;
  std::vector<double> log_weights_;
};

/// Isotropic Gaussian N(mean * 1, cov_scale * I) in n dimensions.
std::shared_ptr<DiagonalGaussian> make_gaussian(std::size_t n, double mean, double cov_scale);
std::shared_ptr<DiagonalGaussian> make_gaussian(Vec mean, double cov_scale);

std::shared_ptr<GaussianMixture> make_mixture(const std::vector<MixtureComponent>& components);

/// Gaussian density evaluated at every node of `domain`, normalized by exact summation.
std::shared_ptr<GridPmf> make_discretized_gaussian(const GridDomain& domain, const Vec& mean,
                                                   const Vec& variances);

/// sup_x [log p(x) - log q(x)] for diagonal Gaussians; throws when unbounded.
double max_log_ratio(const DiagonalGaussian& p, const DiagonalGaussian& q);

}  // namespace gis

#endif  // GIS_DISTRIBUTIONS_HPP
