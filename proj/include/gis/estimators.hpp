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

#ifndef GIS_ESTIMATORS_HPP
#define GIS_ESTIMATORS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gis/auxweight.hpp"
#include "gis/model.hpp"
#include "gis/search.hpp"

namespace gis {

/// Direct weights P/Q need the exact normalizer of P; indirect weights are
/// only proportional to P/Q and are combined by the self-normalized ratio.
enum class WeightMode { Direct, Indirect };

/// Serial is the reference path; Parallel spreads blocks over OpenMP threads
/// and must reproduce it bit for bit.
enum class Exec { Serial, Parallel };

struct WeightedPoint {
  Vec point;
  /// f(point).
  double value = 0.0;
  double weight = 0.0;
  std::size_t block_id = 0;
  std::size_t depth = 0;
};

struct EstimateReport {
  double estimate = 0.0;
  std::size_t n_starts = 0;
  std::size_t n_points = 0;
  /// Sum of the weights actually used. Indirect weights are scaled by
  /// exp(-log_weight_shift) so the largest unit weight is 1.
  double sum_weights = 0.0;
  /// (sum w)^2 / sum w^2.
  double effective_sample_size = 0.0;
  double log_weight_shift = 0.0;
};

/// Everything a block contributes before the weights are combined.
struct BlockTerms {
  std::vector<double> values;      // f(x_j)
  std::vector<double> log_ratios;  // log p(x_j) - log q(x_i)
  std::vector<double> alphas;      // alpha_ij
  std::vector<Vec> points;         // filled only on request
  Block block;                     // grid coordinates or lattice offsets
  std::vector<int> branches;       // inward branching of each block point
};

/// Combine per-block terms in block order. Direct: (1/n) sum f w. Indirect: sum f u / sum u.
EstimateReport combine_blocks(std::span<const BlockTerms> blocks, WeightMode mode);

/// Flatten per-block terms into weighted points, weights scaled as in combine_blocks.
std::vector<WeightedPoint> weighted_points(std::span<const BlockTerms> blocks, WeightMode mode);

/// Plain importance sampling: n draws from Q weighted by P/Q.
EstimateReport is_estimate(const Problem& problem, std::size_t n, Rng& rng, WeightMode mode = WeightMode::Direct);

/// Self-normalized estimate sum f u / sum u over an indirectly weighted sample.
double indirect_estimate(std::span<const WeightedPoint> sample);

/// Deterministic block of real points recovered from a start.
using BlockFn = std::function<std::vector<Vec>(std::span<const double> start)>;
/// alpha for the k-th point of the block recovered from `start`.
using AlphaFn = std::function<double(std::span<const double> start, const std::vector<Vec>& block, std::size_t k)>;

/// Importance sampling over arbitrary deterministic blocks with caller-supplied auxiliary weights.
/** Unbiased whenever the incoming alpha of every point sums to one. */
EstimateReport generalized_is(const Problem& problem, const BlockFn& block_fn, const AlphaFn& alpha_fn,
                              std::size_t n, Rng& rng, WeightMode mode = WeightMode::Direct);

/// Builds and weights greedy blocks for one problem and search configuration.
/**
 * Grid-supported targets search the target's grid; all others walk the
 * eps-lattice anchored at each start. weigh() is const and safe to call
 * concurrently.
 */
class GreedyWeigher {
 public:
  GreedyWeigher(const Problem& problem, const SearchConfig& cfg, WeightMode mode);

  BlockTerms weigh(std::span<const double> start, bool keep_points = false) const;

  const SearchConfig& config() const { return cfg_; }
  const GridSpace* grid_space() const { return grid_ ? &*grid_ : nullptr; }

 private:
  double log_target(std::span<const double> x) const;
  double log_proposal(std::span<const double> x) const;

  const Problem& problem_;
  SearchConfig cfg_;
  WeightMode mode_;
  std::vector<double> sizes_;
  std::optional<GridSpace> grid_;
  LatticeSpace::LogObjective log_objective_;
};

/// Greedy importance sampling: n starts from Q, one greedy block per start.
EstimateReport gis_estimate(const Problem& problem, const SearchConfig& cfg, std::size_t n, Rng& rng,
                            WeightMode mode = WeightMode::Indirect, Exec exec = Exec::Serial);

/// The weighted sample behind gis_estimate, for inspection.
std::vector<WeightedPoint> gis_sample(const Problem& problem, const SearchConfig& cfg, std::size_t n, Rng& rng,
                                      WeightMode mode = WeightMode::Indirect);

}  // namespace gis

#endif  // GIS_ESTIMATORS_HPP
