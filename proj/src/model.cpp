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

#include "gis/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gis {

GridDomain::GridDomain(std::vector<int> lo, std::vector<int> hi, double spacing)
    : lo_(std::move(lo)), hi_(std::move(hi)), spacing_(spacing) {
  if (lo_.empty()) throw std::invalid_argument("GridDomain: dimension must be at least 1");
  if (lo_.size() != hi_.size()) throw std::invalid_argument("GridDomain: lo/hi length mismatch");
  if (!(spacing_ > 0.0)) throw std::invalid_argument("GridDomain: spacing must be positive");
  stride_.resize(lo_.size());
  for (std::size_t k = lo_.size(); k-- > 0;) {
    if (lo_[k] >= hi_[k]) throw std::invalid_argument("GridDomain: need lo < hi on every axis");
    stride_[k] = size_;
    size_ *= static_cast<std::size_t>(hi_[k] - lo_[k] + 1);
  }
}

GridDomain GridDomain::cube(std::size_t n, int lo, int hi, double spacing) {
  return GridDomain(std::vector<int>(n, lo), std::vector<int>(n, hi), spacing);
}

bool GridDomain::contains(const GridPoint& p) const {
  if (p.size() != dim()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < lo_[k] || p[k] > hi_[k]) return false;
  }
  return true;
}

std::size_t GridDomain::index_of(const GridPoint& p) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    index += static_cast<std::size_t>(p[k] - lo_[k]) * stride_[k];
  }
  return index;
}

GridPoint GridDomain::point_at(std::size_t index) const {
  GridPoint p(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    p[k] = lo_[k] + static_cast<int>(index / stride_[k]);
    index %= stride_[k];
  }
  return p;
}

void GridDomain::to_real(const GridPoint& p, std::span<double> out) const {
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = spacing_ * p[k];
}

Vec GridDomain::to_real(const GridPoint& p) const {
  Vec x(p.size());
  to_real(p, x);
  return x;
}

std::optional<GridPoint> GridDomain::from_real(std::span<const double> x) const {
  if (x.size() != dim()) return std::nullopt;
  GridPoint p(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const double r = std::round(x[k] / spacing_);
    if (r < lo_[k] || r > hi_[k]) return std::nullopt;
    p[k] = static_cast<int>(r);
  }
  return p;
}

Vec LatticePoint::coords() const {
  Vec x(anchor.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = anchor[k] + eps * offset[k];
  return x;
}

void Distribution::sample(Rng&, std::span<double>) const {
  throw std::logic_error("distribution has no exact sampler");
}

void Distribution::grad_log(std::span<const double>, std::span<double>) const {
  throw std::logic_error("distribution has no log-density gradient");
}

double Distribution::sample_conditional(std::size_t, std::span<const double>, Rng&) const {
  throw std::logic_error("distribution has no full conditionals");
}

double Distribution::mass(std::span<const double> x) const { return std::exp(log_mass(x)); }

double Distribution::log_prob(std::span<const double> x) const {
  const auto log_z = log_normalizer();
  if (!log_z) throw std::logic_error("log_prob requires an exact normalizer");
  return log_mass(x) - *log_z;
}

Vec Distribution::sample(Rng& rng) const {
  Vec x(dim());
  sample(rng, x);
  return x;
}

GridPmf::GridPmf(GridDomain domain, std::vector<double> log_masses)
    : domain_(std::move(domain)), log_mass_(std::move(log_masses)) {
  if (log_mass_.size() != domain_.size()) throw std::invalid_argument("GridPmf: table size mismatch");
  const double peak = *std::max_element(log_mass_.begin(), log_mass_.end());
  if (!std::isfinite(peak)) throw std::invalid_argument("GridPmf: no positive mass");
  cdf_.resize(log_mass_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_mass_.size(); ++i) {
    if (std::isnan(log_mass_[i])) throw std::invalid_argument("GridPmf: NaN mass");
    total += std::exp(log_mass_[i] - peak);
    cdf_[i] = total;
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
  log_z_ = peak + std::log(total);
}

double GridPmf::log_mass(std::span<const double> x) const {
  const auto p = domain_.from_real(x);
  if (!p) return -std::numeric_limits<double>::infinity();
  return log_mass_[domain_.index_of(*p)];
}

double GridPmf::prob_at(std::size_t index) const { return std::exp(log_mass_[index] - log_z_); }

std::size_t GridPmf::sample_index(Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

void GridPmf::sample(Rng& rng, std::span<double> out) const {
  domain_.to_real(domain_.point_at(sample_index(rng)), out);
}

Objective Objective::constant(double c) {
  return Objective("const", [c](std::span<const double>) { return c; });
}

Objective Objective::neg_log_prob(DistributionPtr target) {
  if (!target->normalized()) throw std::invalid_argument("neg_log_prob needs a normalized target");
  return Objective("neg_log_p", [target](std::span<const double> x) { return -target->log_prob(x); });
}

Objective Objective::squared_norm() {
  return Objective("sq_norm", [](std::span<const double> x) {
    return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  });
}

Objective Objective::coordinate(std::size_t axis) {
  return Objective("x" + std::to_string(axis), [axis](std::span<const double> x) { return x[axis]; });
}

double log_search_objective(const Distribution& target, const Objective& f, std::span<const double> x) {
  const double log_p = target.log_mass(x);
  if (log_p == -std::numeric_limits<double>::infinity()) return log_p;
  const double value = f(x);
  if (!std::isfinite(value) || std::isnan(log_p)) {
    throw std::domain_error("search objective is not finite at a point with positive target mass");
  }
  return std::log(std::abs(value)) + log_p;
}

double search_objective(const Distribution& target, const Objective& f, std::span<const double> x) {
  return std::exp(log_search_objective(target, f, x));
}

}  // namespace gis
