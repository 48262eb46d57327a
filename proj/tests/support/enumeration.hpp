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

#ifndef GIS_TESTS_ENUMERATION_HPP
#define GIS_TESTS_ENUMERATION_HPP

#include <cmath>

#include "gis/estimators.hpp"

namespace enumeration {

/// Exact expectation of the library's direct GIS estimator with one start:
/// every grid node as a start, weighted by its proposal probability.
inline double expected_direct_gis(const gis::Problem& problem, const gis::SearchConfig& cfg) {
  const gis::GreedyWeigher weigher(problem, cfg, gis::WeightMode::Direct);
  const gis::GridDomain& domain = *problem.target->grid();
  double total = 0.0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const gis::Vec start = domain.to_real(domain.point_at(i));
    const auto terms = weigher.weigh(start);
    double block = 0.0;
    for (std::size_t j = 0; j < terms.values.size(); ++j) {
      block += terms.values[j] * terms.alphas[j] * std::exp(terms.log_ratios[j]);
    }
    total += std::exp(problem.proposal->log_prob(start)) * block;
  }
  return total;
}

}  // namespace enumeration

#endif  // GIS_TESTS_ENUMERATION_HPP
