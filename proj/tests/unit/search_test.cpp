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

#include <gmock/gmock.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "gis/distributions.hpp"
#include "gis/scenario.hpp"
#include "gis/search.hpp"
#include "oracles.hpp"

namespace {

using gis::Coords;
using testing::ElementsAre;

gis::GridSpace table_1d(const std::vector<double>& values) {
  return gis::GridSpace::from_values(gis::GridDomain({0}, {static_cast<int>(values.size()) - 1}), values);
}

gis::LatticeSpace::LogObjective standard_normal_log() {
  return [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s -= 0.5 * v * v;
    return s;
  };
}

TEST(Neighbors, InteriorAndCorner) {
  const auto space = gis::GridSpace::from_values(gis::GridDomain::cube(2, 0, 4), std::vector<double>(25, 1.0));
  EXPECT_THAT(gis::neighbors(space, {2, 2}), ElementsAre(Coords{1, 2}, Coords{3, 2}, Coords{2, 1}, Coords{2, 3}));
  EXPECT_THAT(gis::neighbors(space, {0, 0}), ElementsAre(Coords{1, 0}, Coords{0, 1}));
}

TEST(Neighbors, LatticeHasAllDirections) {
  const gis::LatticeSpace space({0.3, 0.1, -2.0}, 0.5, standard_normal_log());
  const auto n = gis::neighbors(space, {0, 0, 0});
  ASSERT_EQ(n.size(), 6u);
  for (const auto& y : n) {
    int l1 = 0;
    for (int v : y) l1 += std::abs(v);
    EXPECT_EQ(l1, 1);
  }
}

TEST(GreedySuccessor, OneDimensionalTables) {
  const auto space = table_1d({1, 3, 2});
  EXPECT_FALSE(gis::greedy_successor(space, {1}).has_value());
  EXPECT_THAT(*gis::greedy_successor(space, {0}), ElementsAre(1));
  EXPECT_THAT(*gis::greedy_successor(space, {2}), ElementsAre(1));
}

TEST(GreedySuccessor, PlateauDoesNotMove) {
  const auto space = table_1d({2, 2, 2});
  for (int i = 0; i < 3; ++i) EXPECT_FALSE(gis::greedy_successor(space, {i}).has_value());
}

TEST(GreedySuccessor, TiesGoToLowestNeighborIndex) {
  // Centre (1,1) has value 1; all four neighbors tie at 5.
  std::vector<double> v(9, 0.5);
  const gis::GridDomain domain = gis::GridDomain::cube(2, 0, 2);
  v[domain.index_of({1, 1})] = 1;
  for (const Coords& c : {Coords{0, 1}, Coords{2, 1}, Coords{1, 0}, Coords{1, 2}}) v[domain.index_of(c)] = 5;
  const auto space = gis::GridSpace::from_values(domain, v);
  EXPECT_THAT(*gis::greedy_successor(space, {1, 1}), ElementsAre(0, 1));
  // A strictly larger value later in the order still wins.
  v[domain.index_of({1, 2})] = 6;
  const auto space2 = gis::GridSpace::from_values(domain, v);
  EXPECT_THAT(*gis::greedy_successor(space2, {1, 1}), ElementsAre(1, 2));
}

TEST(GreedySuccessor, RejectsNaN) {
  const auto space = gis::GridSpace(gis::GridDomain({0}, {1}), {0.0, 0.0});
  const gis::LatticeSpace lattice({0.0}, 1.0, [](std::span<const double>) { return std::nan(""); });
  EXPECT_THROW(gis::greedy_successor(lattice, {0}), std::domain_error);
  EXPECT_THROW(gis::GridSpace(gis::GridDomain({0}, {1}), {0.0, std::nan("")}), std::domain_error);
}

TEST(GreedySuccessor, MatchesBruteForceOnEveryGridScenario) {
  for (const auto& name : gis::scenario_names()) {
    const auto s = gis::make_scenario(name);
    const auto* domain = s.problem.target->grid();
    if (domain == nullptr) continue;
    const auto space = gis::GridSpace::for_target(*s.problem.target, s.problem.f);
    const oracle::GridGreedy brute(*s.problem.target, s.problem.f);
    for (std::size_t i = 0; i < domain->size(); ++i) {
      const auto next = gis::greedy_successor(space, domain->point_at(i));
      const auto& expected = brute.successor(i);
      ASSERT_EQ(next.has_value(), expected.has_value()) << name << " node " << i;
      if (next) {
        EXPECT_EQ(domain->index_of(*next), *expected) << name << " node " << i;
      }
    }
  }
}

TEST(BuildBlock, SpecExamples) {
  const auto peak = table_1d({1, 3, 2});
  auto b = gis::build_block(peak, {0}, 1);
  EXPECT_THAT(b.points, ElementsAre(Coords{0}));
  EXPECT_EQ(b.terminated_by, gis::Termination::StepLimit);

  b = gis::build_block(peak, {1}, 5);
  EXPECT_THAT(b.points, ElementsAre(Coords{1}));
  EXPECT_EQ(b.terminated_by, gis::Termination::LocalMax);

  std::vector<double> rising(10);
  for (int i = 0; i < 10; ++i) rising[i] = i + 1.0;
  b = gis::build_block(table_1d(rising), {2}, 4);
  EXPECT_THAT(b.points, ElementsAre(Coords{2}, Coords{3}, Coords{4}, Coords{5}));
  EXPECT_EQ(b.terminated_by, gis::Termination::StepLimit);
  EXPECT_TRUE(std::is_sorted(b.scores.begin(), b.scores.end()));
}

TEST(BuildBlock, RejectsBadArguments) {
  const auto peak = table_1d({1, 3, 2});
  EXPECT_THROW(gis::build_block(peak, {0}, 0), std::invalid_argument);
  EXPECT_THROW(gis::build_block(peak, {3}, 2), std::invalid_argument);
}

TEST(BuildBlock, ZeroObjectiveRegionsStillTakePart) {
  // f(x) = x crosses zero at the mode of P; the zero point climbs off to the
  // first neighbor in order and every other start climbs away from it.
  const auto domain = gis::GridDomain::cube(1, -6, 6);
  const auto p = gis::make_discretized_gaussian(domain, {0.0}, {4.0});
  const auto space = gis::GridSpace::for_target(*p, gis::Objective::coordinate(0));
  EXPECT_EQ(space.score({0}), -std::numeric_limits<double>::infinity());
  const auto b = gis::build_block(space, {0}, 10);
  ASSERT_GE(b.size(), 2u);
  EXPECT_THAT(b.points[1], ElementsAre(-1));
  EXPECT_EQ(gis::inward_branching(space, {0}), 0);
}

TEST(BuildBlockContinuous, WalksTowardTheMean) {
  const double start[] = {5.0};
  const auto cb = gis::build_block_continuous(start, {1.0, 3, 1.0}, standard_normal_log());
  EXPECT_THAT(cb.block.points, ElementsAre(Coords{0}, Coords{-1}, Coords{-2}));
  EXPECT_THAT(cb.point(2).coords(), ElementsAre(3.0));
}

TEST(BuildBlockContinuous, StartAtModeIsSingleton) {
  const double start[] = {0.2, -0.4};
  const auto cb = gis::build_block_continuous(start, {1.0, 10, 1.0}, standard_normal_log());
  EXPECT_EQ(cb.block.size(), 1u);
  EXPECT_EQ(cb.block.terminated_by, gis::Termination::LocalMax);
}

TEST(BuildBlockContinuous, MatchesExhaustiveLatticeTable) {
  // f = -log p for N(0,1): |f p| peaks at |x| = 0.40, away from the mean.
  const auto p = gis::make_gaussian(1, 0.0, 1.0);
  const auto f = gis::Objective::neg_log_prob(p);
  const double anchor = 0.2;
  const double eps = 0.1;
  const int m = 8;
  const auto cb = gis::build_block_continuous(std::vector<double>{anchor}, {1.0, m, eps}, gis::make_log_objective(p, f));

  // Tabulate |f p| on offsets -m..m and climb the table by hand.
  std::vector<double> table;
  for (int k = -m; k <= m; ++k) {
    const double x = anchor + eps * k;
    table.push_back(std::abs(f(std::vector<double>{x})) * p->mass(std::vector<double>{x}));
  }
  std::vector<int> expected{0};
  while (static_cast<int>(expected.size()) < m) {
    const int here = expected.back() + m;
    const double left = table[here - 1];
    const double right = table[here + 1];
    double best = table[here];
    int step = 0;
    if (left > best) {
      best = left;
      step = -1;
    }
    if (right > best) step = 1;
    if (step == 0) break;
    expected.push_back(expected.back() + step);
  }
  ASSERT_EQ(cb.block.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_THAT(cb.block.points[k], ElementsAre(expected[k]));
  EXPECT_GT(cb.block.size(), 1u);
  EXPECT_GT(std::abs(cb.point(cb.block.size() - 1).coords()[0]), anchor);
}

TEST(Predecessors, PeakAndValley) {
  const auto peak = table_1d({1, 3, 1});
  EXPECT_THAT(gis::predecessors(peak, {1}), ElementsAre(Coords{0}, Coords{2}));
  EXPECT_EQ(gis::inward_branching(peak, {1}), 2);
  const auto valley = table_1d({3, 1, 3});
  EXPECT_TRUE(gis::predecessors(valley, {1}).empty());
}

TEST(Predecessors, AgreeWithSuccessorExhaustively) {
  const auto s = gis::make_scenario("grid9");
  const auto space = gis::GridSpace::for_target(*s.problem.target, s.problem.f);
  const auto& domain = space.domain();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto x = domain.point_at(i);
    const auto preds = gis::predecessors(space, x);
    for (const auto& y : gis::neighbors(space, x)) {
      const auto next = gis::greedy_successor(space, y);
      const bool enters = next && *next == x;
      EXPECT_EQ(gis::steps_into(space, y, x), enters);
      EXPECT_EQ(std::find(preds.begin(), preds.end(), y) != preds.end(), enters);
    }
  }
}

TEST(Predecessors, StepsIntoMatchesSuccessorOnLattice) {
  // Bumpy 3-D objective with many near-ties; compare on every point of a 7^3 box.
  const gis::LatticeSpace space({0.1, -0.3, 0.7}, 0.5, [](std::span<const double> x) {
    return -0.1 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) + std::sin(2 * x[0]) * std::cos(3 * x[1]) + 0.3 * x[2];
  });
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      for (int c = -3; c <= 3; ++c) {
        const Coords y{a, b, c};
        const auto next = gis::greedy_successor(space, y);
        for (const auto& x : gis::neighbors(space, y)) {
          EXPECT_EQ(gis::steps_into(space, y, x), next && *next == x);
        }
      }
    }
  }
}

TEST(BlockProperties, StrictAscentNoRevisitOnRandomStarts) {
  const auto mix = gis::make_mixture({{0.5, {0, 0}, {1, 1}}, {0.5, {16, 16}, {1, 1}}});
  const auto log_obj = gis::make_log_objective(mix, gis::Objective::squared_norm());
  gis::Rng rng(17);
  std::normal_distribution<double> start(0.0, 6.0);
  for (int i = 0; i < 10000; ++i) {
    const gis::Vec s{start(rng), start(rng)};
    const auto cb = gis::build_block_continuous(s, {2 / 2.6, 20, 1.0}, log_obj);
    const auto& pts = cb.block.points;
    ASSERT_LE(pts.size(), 20u);
    EXPECT_EQ(std::set<Coords>(pts.begin(), pts.end()).size(), pts.size());
    for (std::size_t k = 1; k < pts.size(); ++k) {
      ASSERT_GT(cb.block.scores[k], cb.block.scores[k - 1]);
      int l1 = 0;
      for (std::size_t a = 0; a < 2; ++a) l1 += std::abs(pts[k][a] - pts[k - 1][a]);
      ASSERT_EQ(l1, 1);
    }
    const auto again = gis::build_block_continuous(s, {2 / 2.6, 20, 1.0}, log_obj);
    ASSERT_EQ(again.block.points, pts);
  }
}

TEST(OffsetMemo, FindInsertAndGrow) {
  gis::OffsetMemo memo(3, 4);
  EXPECT_EQ(memo.find({0, 0, 0}), nullptr);
  for (int i = 0; i < 1000; ++i) memo.insert({i, -i, i % 7}, i * 0.5);
  EXPECT_EQ(memo.size(), 1000u);
  for (int i = 0; i < 1000; ++i) {
    const double* v = memo.find({i, -i, i % 7});
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(*v, i * 0.5);
  }
  memo.insert({5, -5, 5}, 9.0);
  EXPECT_EQ(memo.size(), 1000u);
  EXPECT_EQ(*memo.find({5, -5, 5}), 9.0);
  EXPECT_EQ(memo.find({1, 1, 1}), nullptr);
  EXPECT_THROW(memo.insert({1, 2}, 0.0), std::invalid_argument);
}

TEST(LatticeSpace, ScoresAreMemoized) {
  int calls = 0;
  const gis::LatticeSpace space({0.0, 0.0}, 1.0, [&](std::span<const double> x) {
    ++calls;
    return -x[0] * x[0] - x[1] * x[1];
  });
  EXPECT_EQ(space.score({1, 2}), -5.0);
  EXPECT_EQ(space.score({1, 2}), -5.0);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(space.evaluations(), 1u);
}

}  // namespace
