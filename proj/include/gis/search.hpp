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

#ifndef GIS_SEARCH_HPP
#define GIS_SEARCH_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gis/model.hpp"
#include "gis/search_config.hpp"

namespace gis {

/// A space the greedy search can walk: integer points, a membership test and
/// a score that is any strictly increasing transform of |f p~| (we use its log).
template <class S>
concept SearchSpace = requires(const S& s, const Coords& p) {
  { s.dim() } -> std::convertible_to<std::size_t>;
  { s.contains(p) } -> std::convertible_to<bool>;
  { s.score(p) } -> std::convertible_to<double>;
};

/// Finite grid with a precomputed score per node. Off-grid points do not exist.
class GridSpace {
 public:
  GridSpace(GridDomain domain, std::vector<double> scores);

  /// Scores are log(values); values must be nonnegative.
  static GridSpace from_values(GridDomain domain, std::span<const double> objective_values);
  /// Scores log|f p~| over the grid the target lives on.
  static GridSpace for_target(const Distribution& target, const Objective& f);

  std::size_t dim() const { return domain_.dim(); }
  bool contains(const Coords& p) const { return domain_.contains(p); }
  double score(const Coords& p) const { return scores_[domain_.index_of(p)]; }
  const GridDomain& domain() const { return domain_; }

 private:
  GridDomain domain_;
  std::vector<double> scores_;
};

/// Open-addressing map from fixed-length integer offsets to scores.
/** Keys live in one contiguous array, so lookups and inserts never allocate per entry. */
class OffsetMemo {
 public:
  explicit OffsetMemo(std::size_t dim, std::size_t initial_slots = 256);

  /// Pointer to the stored score, or nullptr.
  const double* find(const Coords& key) const;
  void insert(const Coords& key, double value);
  std::size_t size() const { return size_; }

 private:
  std::size_t slot_of(const Coords& key, std::uint64_t hash) const;
  void grow();

  std::size_t dim_;
  std::size_t mask_;
  std::size_t size_ = 0;
  std::unique_ptr<int[]> keys_;
  std::unique_ptr<double[]> values_;
  std::vector<std::uint64_t> hashes_;  // 0 marks an empty slot
};

/// The eps-lattice anchor + eps * Z^n, scored lazily and memoized.
/**
 * Points are integer offsets from the anchor, so identity and neighbor
 * relations are exact. The memo makes instances unsuitable for sharing
 * between threads; build one per block.
 */
class LatticeSpace {
 public:
  using LogObjective = std::function<double(std::span<const double>)>;

  /// expected_points only pre-sizes the memo.
  LatticeSpace(Vec anchor, double eps, LogObjective log_objective, std::size_t expected_points = 128);

  std::size_t dim() const { return anchor_.size(); }
  bool contains(const Coords&) const { return true; }
  double score(const Coords& offset) const;

  void to_real(const Coords& offset, std::span<double> out) const;
  Vec to_real(const Coords& offset) const;
  const Vec& anchor() const { return anchor_; }
  double eps() const { return eps_; }
  std::size_t evaluations() const { return memo_.size(); }

 private:
  Vec anchor_;
  double eps_;
  LogObjective log_objective_;
  mutable OffsetMemo memo_;
  mutable Vec scratch_;
};

enum class Termination { LocalMax, StepLimit };

/// One greedy ascent: start first, strictly increasing score, at most m points.
struct Block {
  std::vector<Coords> points;
  std::vector<double> scores;
  Termination terminated_by = Termination::StepLimit;

  std::size_t size() const { return points.size(); }
};

/// A block built on the lattice anchored at its own start.
struct ContinuousBlock {
  Vec anchor;
  double eps = 1.0;
  Block block;

  LatticePoint point(std::size_t k) const { return {anchor, block.points[k], eps}; }
};

namespace detail {

inline double checked(double s) {
  if (std::isnan(s)) throw std::domain_error("search objective is NaN");
  return s;
}

}  // namespace detail

/// Neighbors in the fixed order -e0, +e0, -e1, +e1, ...; points outside the space are skipped.
template <SearchSpace S>
std::vector<Coords> neighbors(const S& space, const Coords& x) {
  std::vector<Coords> out;
  out.reserve(2 * x.size());
  Coords y = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int step : {-1, 1}) {
      y[k] = x[k] + step;
      if (space.contains(y)) out.push_back(y);
    }
    y[k] = x[k];
  }
  return out;
}

/// Best strictly improving neighbor; the earliest in neighbor order wins ties.
/** Returns nothing at a local maximum, plateaus included. */
template <SearchSpace S>
std::optional<Coords> greedy_successor(const S& space, const Coords& x) {
  double best = detail::checked(space.score(x));
  std::optional<Coords> choice;
  Coords y = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int step : {-1, 1}) {
      y[k] = x[k] + step;
      if (!space.contains(y)) continue;
      const double s = detail::checked(space.score(y));
      if (s > best) {
        best = s;
        choice = y;
      }
    }
    y[k] = x[k];
  }
  return choice;
}

/// True iff greedy_successor(y) == x, for x a neighbor of y.
/**
 * Exits as soon as some other neighbor of y would be preferred over x, which
 * avoids scoring most of y's neighborhood.
 */
template <SearchSpace S>
bool steps_into(const S& space, const Coords& y, const Coords& x) {
  const double sx = detail::checked(space.score(x));
  if (!(sx > detail::checked(space.score(y)))) return false;
  std::size_t axis = 0;
  while (axis < x.size() && x[axis] == y[axis]) ++axis;
  if (axis == x.size()) return false;
  const std::size_t x_rank = 2 * axis + (x[axis] > y[axis] ? 1 : 0);
  Coords z = y;
  for (std::size_t k = 0; k < y.size(); ++k) {
    for (int step : {-1, 1}) {
      const std::size_t rank = 2 * k + (step > 0 ? 1 : 0);
      if (rank == x_rank) continue;
      z[k] = y[k] + step;
      if (space.contains(z)) {
        const double s = detail::checked(space.score(z));
        if (rank < x_rank ? s >= sx : s > sx) return false;
      }
    }
    z[k] = y[k];
  }
  return true;
}

/// Neighbors whose greedy step lands on x.
template <SearchSpace S>
std::vector<Coords> predecessors(const S& space, const Coords& x) {
  std::vector<Coords> out;
  for (auto& y : neighbors(space, x)) {
    if (steps_into(space, y, x)) out.push_back(std::move(y));
  }
  return out;
}

/// Number of neighbors whose greedy step lands on x.
template <SearchSpace S>
int inward_branching(const S& space, const Coords& x) {
  int count = 0;
  Coords y = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int step : {-1, 1}) {
      y[k] = x[k] + step;
      if (space.contains(y) && steps_into(space, y, x)) ++count;
    }
    y[k] = x[k];
  }
  return count;
}

/// Greedy ascent from `start` for at most m - 1 steps.
template <SearchSpace S>
Block build_block(const S& space, const Coords& start, int m) {
  if (m < 1) throw std::invalid_argument("build_block: m must be at least 1");
  if (!space.contains(start)) throw std::invalid_argument("build_block: start outside the domain");
  Block block;
  block.points.push_back(start);
  block.scores.push_back(detail::checked(space.score(start)));
  while (block.points.size() < static_cast<std::size_t>(m)) {
    auto next = greedy_successor(space, block.points.back());
    if (!next) {
      block.terminated_by = Termination::LocalMax;
      return block;
    }
    const double s = space.score(*next);
    if (!(s > block.scores.back())) throw std::logic_error("build_block: ascent is not strict");
    block.points.push_back(std::move(*next));
    block.scores.push_back(s);
  }
  block.terminated_by = Termination::StepLimit;
  return block;
}

/// Greedy ascent on the eps-lattice anchored at `start`, scored by `log_objective`.
ContinuousBlock build_block_continuous(std::span<const double> start, const SearchConfig& cfg,
                                       LatticeSpace::LogObjective log_objective);

/// log|f p~| as a lattice scoring function.
LatticeSpace::LogObjective make_log_objective(DistributionPtr target, Objective f);

}  // namespace gis

#endif  // GIS_SEARCH_HPP
