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

#include "gis/auxweight.hpp"

namespace gis {

double tree_size(double b, int m) {
  if (m < 1) throw std::invalid_argument("tree_size: m must be at least 1");
  if (!(b > 0.0)) throw std::invalid_argument("tree_size: b must be positive");
  double s = 1.0;
  for (int level = 2; level <= m; ++level) s = 1.0 + b * s;
  return s;
}

std::vector<double> tree_size_table(double b, int m) {
  std::vector<double> sizes(static_cast<std::size_t>(m) + 1, 0.0);
  for (int level = 1; level <= m; ++level) sizes[level] = tree_size(b, level);
  return sizes;
}

double beta(const PathRecord& path, double b) {
  if (path.branch_factors.size() + 1 != path.points.size()) {
    throw std::invalid_argument("beta: need one branch factor per node after the start");
  }
  double product = 1.0;
  for (int factor : path.branch_factors) {
    if (factor <= 0) throw std::logic_error("beta: zero inward branching on a search path");
    product *= b / factor;
  }
  return product;
}

double alpha(const PathRecord& path, const SearchConfig& cfg) {
  const int d = path.depth();
  if (d < 0) throw std::invalid_argument("alpha: empty path");
  if (d >= cfg.m) throw std::invalid_argument("alpha: path longer than m - 1 steps");
  const double s_m = tree_size(cfg.b, cfg.m);
  const double bt = beta(path, cfg.b);
  return path.start_branch != 0 ? bt / s_m : bt * tree_size(cfg.b, cfg.m - d) / s_m;
}

}  // namespace gis
