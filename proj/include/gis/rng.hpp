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

#ifndef GIS_RNG_HPP
#define GIS_RNG_HPP

#include <cstdint>
#include <random>

namespace gis {

/// Random engine used by every sampler. Each worker owns one; none are shared.
using Rng = std::mt19937_64;

/// Engine for repetition `rep` of a run seeded with `master_seed`.
/**
 * The stream is a pure function of (master_seed, rep): the four 32-bit halves
 * are fed through std::seed_seq, so distinct repetition indices give
 * decorrelated engines and the assignment of repetitions to threads never
 * affects the numbers a repetition sees.
 */
inline Rng stream_for(std::uint64_t master_seed, std::uint64_t rep) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
  return Rng{seq};
}

}  // namespace gis

#endif  // GIS_RNG_HPP
