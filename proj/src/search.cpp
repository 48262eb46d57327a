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

#include "gis/search.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <memory>

namespace gis {

GridSpace::GridSpace(GridDomain domain, std::vector<double> scores)
    : domain_(std::move(domain)), scores_(std::move(scores)) {
  if (scores_.size() != domain_.size()) throw std::invalid_argument("GridSpace: score table size mismatch");
  for (double s : scores_) detail::checked(s);
}

GridSpace GridSpace::from_values(GridDomain domain, std::span<const double> objective_values) {
  std::vector<double> scores(objective_values.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (objective_values[i] < 0.0) throw std::invalid_argument("GridSpace: negative objective value");
    scores[i] = std::log(objective_values[i]);
  }
  return GridSpace(std::move(domain), std::move(scores));
}

GridSpace GridSpace::for_target(const Distribution& target, const Objective& f) {
  const GridDomain* domain = target.grid();
  if (domain == nullptr) throw std::invalid_argument("GridSpace: target is not grid-supported");
  std::vector<double> scores(domain->size());
  Vec x(domain->dim());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    domain->to_real(domain->point_at(i), x);
    scores[i] = log_search_objective(target, f, x);
  }
  return GridSpace(*domain, std::move(scores));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_offsets(const Coords& key) {
  // Independent products keep the per-axis work parallel; the tail mixes high bits down.
  static const auto axis_keys = [] {
    std::array<std::uint64_t, 64> keys{};
    for (std::size_t k = 0; k < keys.size(); ++k) keys[k] = splitmix64(k) | 1;
    return keys;
  }();
  std::uint64_t h = 0;
  for (std::size_t k = 0; k < key.size(); ++k) {
    const std::uint64_t mult = k < axis_keys.size() ? axis_keys[k] : splitmix64(k) | 1;
    h += static_cast<std::uint64_t>(static_cast<std::int64_t>(key[k])) * mult;
  }
  return splitmix64(h) | 1;  // never 0, which marks empty slots
}

}  // namespace

OffsetMemo::OffsetMemo(std::size_t dim, std::size_t initial_slots) : dim_(dim) {
  std::size_t slots = 16;
  while (slots < initial_slots) slots <<= 1;
  mask_ = slots - 1;
  keys_ = std::make_unique_for_overwrite<int[]>(slots * dim_);
  values_ = std::make_unique_for_overwrite<double[]>(slots);
  hashes_.assign(slots, 0);
}

std::size_t OffsetMemo::slot_of(const Coords& key, std::uint64_t hash) const {
  std::size_t i = hash & mask_;
  while (hashes_[i] != 0) {
    if (hashes_[i] == hash && std::equal(key.begin(), key.end(), &keys_[i * dim_])) return i;
    i = (i + 1) & mask_;
  }
  return i;
}

const double* OffsetMemo::find(const Coords& key) const {
  const std::size_t i = slot_of(key, hash_offsets(key));
  return hashes_[i] != 0 ? &values_[i] : nullptr;
}

void OffsetMemo::insert(const Coords& key, double value) {
  if (key.size() != dim_) throw std::invalid_argument("OffsetMemo: key has the wrong dimension");
  if (2 * (size_ + 1) > hashes_.size()) grow();
  const std::uint64_t hash = hash_offsets(key);
  const std::size_t i = slot_of(key, hash);
  if (hashes_[i] == 0) {
    hashes_[i] = hash;
    std::copy(key.begin(), key.end(), &keys_[i * dim_]);
    ++size_;
  }
  values_[i] = value;
}

void OffsetMemo::grow() {
  OffsetMemo bigger(dim_, 2 * hashes_.size());
  Coords key(dim_);
  for (std::size_t i = 0; i < hashes_.size(); ++i) {
    if (hashes_[i] == 0) continue;
    std::copy(&keys_[i * dim_], &keys_[(i + 1) * dim_], key.begin());
    bigger.insert(key, values_[i]);
  }
  *this = std::move(bigger);
}

LatticeSpace::LatticeSpace(Vec anchor, double eps, LogObjective log_objective, std::size_t expected_points)
    : anchor_(std::move(anchor)),
      eps_(eps),
      log_objective_(std::move(log_objective)),
      memo_(anchor_.size(), 2 * expected_points),
      scratch_(anchor_.size()) {
  if (!(eps_ > 0.0)) throw std::invalid_argument("LatticeSpace: eps must be positive");
}

double LatticeSpace::score(const Coords& offset) const {
  if (const double* hit = memo_.find(offset)) return *hit;
  to_real(offset, scratch_);
  const double s = log_objective_(scratch_);
  memo_.insert(offset, s);
  return s;
}

void LatticeSpace::to_real(const Coords& offset, std::span<double> out) const {
  for (std::size_t k = 0; k < anchor_.size(); ++k) out[k] = anchor_[k] + eps_ * offset[k];
}

Vec LatticeSpace::to_real(const Coords& offset) const {
  Vec x(anchor_.size());
  to_real(offset, x);
  return x;
}

ContinuousBlock build_block_continuous(std::span<const double> start, const SearchConfig& cfg,
                                       LatticeSpace::LogObjective log_objective) {
  cfg.validate();
  const LatticeSpace space(Vec(start.begin(), start.end()), cfg.eps, std::move(log_objective));
  ContinuousBlock out{space.anchor(), cfg.eps, {}};
  out.block = build_block(space, Coords(start.size(), 0), cfg.m);
  return out;
}

LatticeSpace::LogObjective make_log_objective(DistributionPtr target, Objective f) {
  return [target = std::move(target), f = std::move(f)](std::span<const double> x) {
    return log_search_objective(*target, f, x);
  };
}

}  // namespace gis
