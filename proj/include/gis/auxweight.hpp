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

#ifndef GIS_AUXWEIGHT_HPP
#define GIS_AUXWEIGHT_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gis/search.hpp"
#include "gis/search_config.hpp"

namespace gis {

/// Node count of a complete balanced tree of depth m with branching b:
/// 1 + b + ... + b^(m-1), i.e. (b^m - 1) / (b - 1), or m when b == 1.
/** Evaluated by the recurrence S(m) = 1 + b S(m-1), which stays accurate for b near 1. */
double tree_size(double b, int m);

/// S(b, 1), ..., S(b, m); entry [l] holds S(b, l) and entry [0] is unused.
std::vector<double> tree_size_table(double b, int m);

/// A search path from a start x_i to a destination x_j.
struct PathRecord {
  /// x_i, x_{i+1}, ..., x_{i+k} = x_j.
  std::vector<Coords> points;
  /// Inward branching factors of points[1..k], in path order.
  std::vector<int> branch_factors;
  /// Inward branching factor of the start.
  int start_branch = 0;

  int depth() const { return static_cast<int>(points.size()) - 1; }
};

/// Path correction: product of b / b_l over every node after the start, 1 at depth 0.
double beta(const PathRecord& path, double b);

/// Auxiliary weight of the destination for the path's start.
/**
 * beta / S(b, m) when the start has predecessors; otherwise the start stands in
 * for the missing complete subtree below it and gets beta * S(b, m - d) / S(b, m),
 * d being the number of steps from start to destination.
 */
double alpha(const PathRecord& path, const SearchConfig& cfg);

struct AlphaTreeReport {
  /// Sum of alpha over the predecessor tree.
  double total = 0.0;
  /// Largest |subtree weight - beta S(b, m - d) / S(b, m)| over internal subtrees.
  double max_subtree_error = 0.0;
  std::size_t nodes = 0;
  int max_depth = 0;
};

namespace detail {

template <SearchSpace S>
class AlphaTreeWalk {
 public:
  AlphaTreeWalk(const S& space, const SearchConfig& cfg, double cap)
      : space_(space), cfg_(cfg), cap_(cap), s_m_(tree_size(cfg.b, cfg.m)) {}

  AlphaTreeReport run(const Coords& root) {
    stack_.assign(1, root);
    branches_.clear();
    report_ = {};
    report_.total = visit();
    return report_;
  }

 private:
  // The node on top of the stack is at depth stack_.size() - 1.
  double visit() {
    if (static_cast<double>(++report_.nodes) > cap_) {
      throw std::runtime_error("verify_alpha_tree: predecessor tree exceeds the safety cap");
    }
    const int depth = static_cast<int>(stack_.size()) - 1;
    report_.max_depth = std::max(report_.max_depth, depth);
    const auto preds = predecessors(space_, stack_.back());

    PathRecord path;
    path.points.assign(stack_.rbegin(), stack_.rend());
    path.branch_factors.assign(branches_.rbegin(), branches_.rend());
    path.start_branch = static_cast<int>(preds.size());
    double subtree = alpha(path, cfg_);

    if (depth + 1 <= cfg_.m - 1 && !preds.empty()) {
      branches_.push_back(static_cast<int>(preds.size()));
      for (const auto& p : preds) {
        stack_.push_back(p);
        subtree += visit();
        stack_.pop_back();
      }
      branches_.pop_back();
    }
    const double expected = beta(path, cfg_.b) * tree_size(cfg_.b, cfg_.m - depth) / s_m_;
    report_.max_subtree_error = std::max(report_.max_subtree_error, std::abs(subtree - expected));
    return subtree;
  }

  const S& space_;
  const SearchConfig& cfg_;
  double cap_;
  double s_m_;
  std::vector<Coords> stack_;
  std::vector<int> branches_;  // inward branching of stack_[0..size-2]
  AlphaTreeReport report_;
};

}  // namespace detail

/// Enumerate the predecessor tree of x_j to depth m - 1 and sum alpha over it.
/**
 * Each node's alpha is computed from its own path record, exactly as a block
 * started there would. The default safety cap is (2n)^m nodes; exceeding it
 * means the successor relation has a loop and is reported as an error.
 */
template <SearchSpace S>
AlphaTreeReport inspect_alpha_tree(const S& space, const Coords& x_j, const SearchConfig& cfg,
                                   std::optional<double> node_cap = std::nullopt) {
  cfg.validate();
  const double cap = node_cap.value_or(std::pow(2.0 * static_cast<double>(space.dim()), cfg.m));
  return detail::AlphaTreeWalk<S>(space, cfg, cap).run(x_j);
}

template <SearchSpace S>
double verify_alpha_tree(const S& space, const Coords& x_j, const SearchConfig& cfg,
                         std::optional<double> node_cap = std::nullopt) {
  return inspect_alpha_tree(space, x_j, cfg, node_cap).total;
}

/// Auxiliary weights of every point of a block for the block's start.
/**
 * Same values as alpha() on each prefix path, accumulated along the block so
 * each point's inward branching is computed once. `sizes` is
 * tree_size_table(cfg.b, cfg.m). Optionally reports the branching factors.
 */
template <SearchSpace S>
std::vector<double> block_alphas(const S& space, const Block& block, const SearchConfig& cfg,
                                 const std::vector<double>& sizes, std::vector<int>* branches = nullptr) {
  const std::size_t k = block.size();
  std::vector<int> bf(k);
  for (std::size_t j = 0; j < k; ++j) bf[j] = inward_branching(space, block.points[j]);
  std::vector<double> out(k);
  const double s_m = sizes[cfg.m];
  double beta_j = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0) {
      if (bf[j] == 0) throw std::logic_error("block_alphas: on-path node without predecessors");
      beta_j *= cfg.b / bf[j];
    }
    out[j] = bf[0] != 0 ? beta_j / s_m : beta_j * sizes[cfg.m - j] / s_m;
  }
  if (branches != nullptr) *branches = std::move(bf);
  return out;
}

}  // namespace gis

#endif  // GIS_AUXWEIGHT_HPP
