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

#include "gis/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gis {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_q(const Distribution& proposal, std::span<const double> x) {
  const double lq = proposal.normalized() ? proposal.log_prob(x) : proposal.log_mass(x);
  if (lq == kNegInf) throw std::domain_error("proposal has zero mass at a drawn point");
  return lq;
}

double log_p(const Distribution& target, std::span<const double> x, WeightMode mode) {
  if (mode == WeightMode::Direct) {
    if (!target.normalized()) throw std::logic_error("direct weights need a normalized target");
    return target.log_prob(x);
  }
  return target.log_mass(x);
}

void check_ratio(double lr) {
  if (std::isnan(lr) || lr == std::numeric_limits<double>::infinity()) {
    throw std::domain_error("non-finite importance weight");
  }
}

std::vector<Vec> draw_starts(const Distribution& proposal, std::size_t n, Rng& rng) {
  if (!proposal.has_sampler()) throw std::logic_error("proposal cannot be sampled");
  std::vector<Vec> starts(n, Vec(proposal.dim()));
  for (auto& s : starts) proposal.sample(rng, s);
  return starts;
}

double weight_shift(std::span<const BlockTerms> blocks, WeightMode mode) {
  if (mode == WeightMode::Direct) return 0.0;
  double shift = kNegInf;
  for (const auto& b : blocks) {
    for (double lr : b.log_ratios) shift = std::max(shift, lr);
  }
  return shift == kNegInf ? 0.0 : shift;
}

}  // namespace

EstimateReport combine_blocks(std::span<const BlockTerms> blocks, WeightMode mode) {
  EstimateReport r;
  r.n_starts = blocks.size();
  if (blocks.empty()) throw std::invalid_argument("combine_blocks: no blocks");
  r.log_weight_shift = weight_shift(blocks, mode);
  double sum_fw = 0.0;
  double sum_w2 = 0.0;
  for (const auto& b : blocks) {
    r.n_points += b.values.size();
    for (std::size_t j = 0; j < b.values.size(); ++j) {
      const double w = b.alphas[j] * std::exp(b.log_ratios[j] - r.log_weight_shift);
      if (!std::isfinite(w) || w < 0.0) throw std::domain_error("non-finite importance weight");
      if (w == 0.0) continue;
      sum_fw += b.values[j] * w;
      r.sum_weights += w;
      sum_w2 += w * w;
    }
  }
  r.effective_sample_size = sum_w2 > 0.0 ? r.sum_weights * r.sum_weights / sum_w2 : 0.0;
  if (mode == WeightMode::Direct) {
    r.estimate = sum_fw / static_cast<double>(blocks.size());
  } else {
    if (!(r.sum_weights > 0.0)) throw std::domain_error("indirect estimate: weights sum to zero");
    r.estimate = sum_fw / r.sum_weights;
  }
  return r;
}

std::vector<WeightedPoint> weighted_points(std::span<const BlockTerms> blocks, WeightMode mode) {
  const double shift = weight_shift(blocks, mode);
  std::vector<WeightedPoint> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    for (std::size_t j = 0; j < b.values.size(); ++j) {
      WeightedPoint wp;
      if (j < b.points.size()) wp.point = b.points[j];
      wp.value = b.values[j];
      wp.weight = b.alphas[j] * std::exp(b.log_ratios[j] - shift);
      wp.block_id = i;
      wp.depth = j;
      out.push_back(std::move(wp));
    }
  }
  return out;
}

EstimateReport is_estimate(const Problem& problem, std::size_t n, Rng& rng, WeightMode mode) {
  if (n == 0) throw std::invalid_argument("is_estimate: n must be positive");
  std::vector<BlockTerms> blocks(n);
  Vec x(problem.dim());
  for (auto& b : blocks) {
    problem.proposal->sample(rng, x);
    const double lr = log_p(*problem.target, x, mode) - log_q(*problem.proposal, x);
    check_ratio(lr);
    b.values.push_back(problem.f(x));
    b.log_ratios.push_back(lr);
    b.alphas.push_back(1.0);
  }
  return combine_blocks(blocks, mode);
}

double indirect_estimate(std::span<const WeightedPoint> sample) {
  double sum_fu = 0.0;
  double sum_u = 0.0;
  for (const auto& p : sample) {
    if (p.weight == 0.0) continue;
    sum_fu += p.value * p.weight;
    sum_u += p.weight;
  }
  if (!(sum_u > 0.0)) throw std::domain_error("indirect estimate: weights sum to zero");
  return sum_fu / sum_u;
}

EstimateReport generalized_is(const Problem& problem, const BlockFn& block_fn, const AlphaFn& alpha_fn,
                              std::size_t n, Rng& rng, WeightMode mode) {
  if (n == 0) throw std::invalid_argument("generalized_is: n must be positive");
  std::vector<BlockTerms> blocks(n);
  Vec start(problem.dim());
  for (auto& b : blocks) {
    problem.proposal->sample(rng, start);
    const double lq = log_q(*problem.proposal, start);
    const auto points = block_fn(start);
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double lr = log_p(*problem.target, points[k], mode) - lq;
      check_ratio(lr);
      b.values.push_back(problem.f(points[k]));
      b.log_ratios.push_back(lr);
      b.alphas.push_back(alpha_fn(start, points, k));
    }
  }
  return combine_blocks(blocks, mode);
}

GreedyWeigher::GreedyWeigher(const Problem& problem, const SearchConfig& cfg, WeightMode mode)
    : problem_(problem), cfg_(cfg), mode_(mode) {
  cfg_.validate();
  sizes_ = tree_size_table(cfg_.b, cfg_.m);
  if (problem_.discrete()) {
    grid_.emplace(GridSpace::for_target(*problem_.target, problem_.f));
  } else {
    log_objective_ = make_log_objective(problem_.target, problem_.f);
  }
}

double GreedyWeigher::log_target(std::span<const double> x) const { return log_p(*problem_.target, x, mode_); }

double GreedyWeigher::log_proposal(std::span<const double> x) const { return log_q(*problem_.proposal, x); }

BlockTerms GreedyWeigher::weigh(std::span<const double> start, bool keep_points) const {
  BlockTerms out;
  const double lq = log_proposal(start);
  Vec x(start.size());
  auto fill = [&](auto to_real) {
    const std::size_t k = out.block.size();
    out.values.resize(k);
    out.log_ratios.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      to_real(out.block.points[j], x);
      out.values[j] = problem_.f(x);
      out.log_ratios[j] = log_target(x) - lq;
      check_ratio(out.log_ratios[j]);
      if (keep_points) out.points.push_back(x);
    }
  };
  if (grid_) {
    const auto& domain = grid_->domain();
    const auto s = domain.from_real(start);
    if (!s) throw std::domain_error("start lies off the target grid");
    out.block = build_block(*grid_, *s, cfg_.m);
    out.alphas = block_alphas(*grid_, out.block, cfg_, sizes_, &out.branches);
    fill([&](const Coords& p, std::span<double> r) { domain.to_real(p, r); });
  } else {
    // A block scores roughly m n^2 / 2 lattice points (neighbors of neighbors of the path).
    const std::size_t n = start.size();
    const LatticeSpace space(Vec(start.begin(), start.end()), cfg_.eps, log_objective_,
                             static_cast<std::size_t>(cfg_.m) * n * n / 2);
    out.block = build_block(space, Coords(start.size(), 0), cfg_.m);
    out.alphas = block_alphas(space, out.block, cfg_, sizes_, &out.branches);
    fill([&](const Coords& p, std::span<double> r) { space.to_real(p, r); });
  }
  return out;
}

EstimateReport gis_estimate(const Problem& problem, const SearchConfig& cfg, std::size_t n, Rng& rng,
                            WeightMode mode, Exec exec) {
  if (n == 0) throw std::invalid_argument("gis_estimate: n must be positive");
  const GreedyWeigher weigher(problem, cfg, mode);
  const auto starts = draw_starts(*problem.proposal, n, rng);
  std::vector<BlockTerms> blocks(n);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) blocks[i] = weigher.weigh(starts[i]);
  } else {
    std::exception_ptr error;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        blocks[i] = weigher.weigh(starts[i]);
      } catch (...) {
#pragma omp critical(gis_block_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  return combine_blocks(blocks, mode);
}

std::vector<WeightedPoint> gis_sample(const Problem& problem, const SearchConfig& cfg, std::size_t n, Rng& rng,
                                      WeightMode mode) {
  const GreedyWeigher weigher(problem, cfg, mode);
  const auto starts = draw_starts(*problem.proposal, n, rng);
  std::vector<BlockTerms> blocks;
  blocks.reserve(n);
  for (const auto& s : starts) blocks.push_back(weigher.weigh(s, true));
  return weighted_points(blocks, mode);
}

}  // namespace gis
