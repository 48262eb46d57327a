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

#ifndef GIS_SEARCH_CONFIG_HPP
#define GIS_SEARCH_CONFIG_HPP

#include <stdexcept>

namespace gis {

/// Parameters of greedy block construction and auxiliary weighting.
struct SearchConfig {
  /// Guessed inward branching factor; any positive real.
  double b = 1.0;
  /// Maximum block length, i.e. at most m - 1 greedy steps.
  int m = 1;
  /// Step size of the continuous lattice walk; unused on grids.
  double eps = 1.0;

  void validate() const {
    if (!(b > 0.0)) throw std::invalid_argument("SearchConfig: b must be positive");
    if (m < 1) throw std::invalid_argument("SearchConfig: m must be at least 1");
    if (!(eps > 0.0)) throw std::invalid_argument("SearchConfig: eps must be positive");
  }
};

}  // namespace gis

#endif  // GIS_SEARCH_CONFIG_HPP
