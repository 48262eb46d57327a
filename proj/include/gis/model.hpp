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

#ifndef GIS_MODEL_HPP
#define GIS_MODEL_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gis/rng.hpp"

namespace gis {

using Vec = std::vector<double>;

/// Integer coordinates: grid coordinates on a GridDomain, or lattice offsets
/// relative to a block anchor.
using Coords = std::vector<int>;
using GridPoint = Coords;

/// Axis-aligned box of integer lattice coordinates with a real pitch.
class GridDomain {
 public:
  GridDomain(std::vector<int> lo, std::vector<int> hi, double spacing = 1.0);

  /// Same bounds on every axis.
  static GridDomain cube(std::size_t n, int lo, int hi, double spacing = 1.0);

  std::size_t dim() const { return lo_.size(); }
  std::size_t size() const { return size_; }
  double spacing() const { return spacing_; }
  const std::vector<int>& lo() const { return lo_; }
  const std::vector<int>& hi() const { return hi_; }

  bool contains(const GridPoint& p) const;
  std::size_t index_of(const GridPoint& p) const;
  GridPoint point_at(std::size_t index) const;

  void to_real(const GridPoint& p, std::span<double> out) const;
  Vec to_real(const GridPoint& p) const;
  /// Nearest grid point to a real vector, if it lies on the grid.
  std::optional<GridPoint> from_real(std::span<const double> x) const;

 private:
  std::vector<int> lo_;
  std::vector<int> hi_;
  double spacing_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

/// A point of the eps-lattice anchored at a block's start: anchor + eps * offset.
/**
 * Identity is (anchor, offset): two points compare equal only when they share
 * the anchor bits and the integer offset, never by comparing real coordinates.
 */
struct LatticePoint {
  Vec anchor;
  Coords offset;
  double eps = 1.0;

  Vec coords() const;

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.anchor == b.anchor && a.offset == b.offset;
  }
};

/// A (possibly unnormalized) distribution on R^n or on the nodes of a grid.
/**
 * Serves both as target (P, with mass p~) and as proposal (Q). Points are
 * always passed as real coordinates; grid-supported distributions map them
 * back to nodes. Capabilities beyond log_mass are optional and queried with
 * the has_* predicates.
 */
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual std::size_t dim() const = 0;

  /// log p~(x); -inf where the mass is zero.
  virtual double log_mass(std::span<const double> x) const = 0;

  /// log Z with p = p~ / Z, when the normalizer is known exactly.
  virtual std::optional<double> log_normalizer() const { return std::nullopt; }

  virtual bool has_sampler() const { return false; }
  virtual void sample(Rng& rng, std::span<double> out) const;

  virtual bool has_gradient() const { return false; }
  /// Gradient of log p~ at x.
  virtual void grad_log(std::span<const double> x, std::span<double> out) const;

  virtual bool has_conditionals() const { return false; }
  /// Draw coordinate `axis` from its full conditional given the other coordinates of x.
  virtual double sample_conditional(std::size_t axis, std::span<const double> x, Rng& rng) const;

  /// The grid this distribution lives on, or nullptr for densities on R^n.
  virtual const GridDomain* grid() const { return nullptr; }

  bool normalized() const { return log_normalizer().has_value(); }
  double mass(std::span<const double> x) const;
  /// Normalized log probability (mass or density); throws without a normalizer.
  double log_prob(std::span<const double> x) const;
  Vec sample(Rng& rng) const;
};

using DistributionPtr = std::shared_ptr<const Distribution>;

/// Probability table over every node of a GridDomain.
/**
 * Built from unnormalized log masses; the normalizer is the exact sum over the
 * whole grid. Sampling inverts the cumulative table.
 */
class GridPmf final : public Distribution {
 public:
  GridPmf(GridDomain domain, std::vector<double> log_masses);

  std::size_t dim() const override { return domain_.dim(); }
  double log_mass(std::span<const double> x) const override;
  std::optional<double> log_normalizer() const override { return log_z_; }
  bool has_sampler() const override { return true; }
  using Distribution::sample;
  void sample(Rng& rng, std::span<double> out) const override;
  const GridDomain* grid() const override { return &domain_; }

  const GridDomain& domain() const { return domain_; }
  double log_mass_at(std::size_t index) const { return log_mass_[index]; }
  double prob_at(std::size_t index) const;
  std::size_t sample_index(Rng& rng) const;

 private:
  GridDomain domain_;
  std::vector<double> log_mass_;
  double log_z_;
  std::vector<double> cdf_;
};

/// A random variable of interest f, evaluated at real coordinates.
class Objective {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  Objective(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  double operator()(std::span<const double> x) const { return fn_(x); }
  const std::string& name() const { return name_; }

  static Objective constant(double c);
  /// f(x) = -log p(x) using the exact normalizer, so E_P f is the entropy of P.
  static Objective neg_log_prob(DistributionPtr target);
  /// f(x) = |x|^2.
  static Objective squared_norm();
  /// f(x) = x[axis].
  static Objective coordinate(std::size_t axis);

 private:
  std::string name_;
  Fn fn_;
};

/// Everything an estimator needs: target P, proposal Q and the variable f.
struct Problem {
  DistributionPtr target;
  DistributionPtr proposal;
  Objective f;

  std::size_t dim() const { return target->dim(); }
  bool discrete() const { return target->grid() != nullptr; }
};

/// log |f(x) p~(x)|: the greedy search climbs this. -inf where either factor is zero.
/** Throws std::domain_error when f is not finite at a point with positive mass. */
double log_search_objective(const Distribution& target, const Objective& f, std::span<const double> x);

/// |f(x) p~(x)| using the unnormalized target mass.
double search_objective(const Distribution& target, const Objective& f, std::span<const double> x);

}  // namespace gis

#endif  // GIS_MODEL_HPP
