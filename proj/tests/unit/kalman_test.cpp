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
#include <numbers>
#include <vector>

#include "gis/distributions.hpp"
#include "gis/kalman.hpp"
#include "gis/scenario.hpp"
#include "oracles.hpp"

namespace {

double log_normal_pdf(double x, double mu, double var) {
  return -0.5 * std::log(2 * std::numbers::pi * var) - 0.5 * (x - mu) * (x - mu) / var;
}

TEST(KalmanPosterior, SingleConjugateUpdate) {
  const gis::KalmanModel model{2.0, 1.5, {1.7}};
  const auto post = gis::kalman_posterior(model);
  EXPECT_NEAR(post.mean, 1.7 * 4.0 / (4.0 + 2.25), 1e-15);
  EXPECT_NEAR(post.variance, 4.0 * 2.25 / (4.0 + 2.25), 1e-15);
}

TEST(KalmanPosterior, ZeroObservationsGiveZeroMean) {
  EXPECT_EQ(gis::kalman_posterior({1.0, 1.0, gis::Vec(6, 0.0)}).mean, 0.0);
}

TEST(KalmanPosterior, MatchesQuadrature) {
  const std::vector<gis::KalmanModel> models{
      {1.0, 1.0, gis::Vec(6, 1.0)},
      {1.0, 1.0, gis::kalman_catalog_observations()},
      {0.5, 2.0, {0.3, -1.2, 2.5, 0.0}},
      {1.5, 0.4, {-2.0, -1.0, 0.5}},
  };
  for (const auto& model : models) {
    const auto exact = gis::kalman_posterior(model);
    const auto quad = oracle::filter_by_quadrature(model.sigma_s, model.sigma_o, model.observations, 14.0, 1401);
    EXPECT_NEAR(exact.mean, quad.mean, 1e-6);
    EXPECT_NEAR(exact.variance, quad.variance, 1e-6);
  }
}

TEST(KalmanPosterior, CatalogTruth) {
  const auto s = gis::make_scenario("table6");
  EXPECT_EQ(s.truth, gis::kalman_posterior(*s.kalman).mean);
  EXPECT_NEAR(s.truth, -0.69608452684648459, 1e-15);
}

TEST(KalmanModel, Validation) {
  EXPECT_THROW(gis::kalman_posterior({1.0, 1.0, {}}), std::invalid_argument);
  EXPECT_THROW(gis::kalman_posterior({0.0, 1.0, {1.0}}), std::invalid_argument);
  EXPECT_THROW(gis::kalman_posterior({1.0, -1.0, {1.0}}), std::invalid_argument);
}

TEST(KalmanPrior, LogMassIsRandomWalkDensity) {
  const gis::KalmanModel model{1.3, 1.0, gis::Vec(3, 0.0)};
  const gis::KalmanPrior prior(model);
  const std::vector<double> x{0.4, -0.2, 1.1};
  const double expected = log_normal_pdf(0.4, 0.0, 1.69) + log_normal_pdf(-0.2, 0.4, 1.69) +
                          log_normal_pdf(1.1, -0.2, 1.69);
  EXPECT_NEAR(prior.log_prob(x), expected, 1e-13);
}

TEST(KalmanPrior, SampleVarianceGrowsLinearly) {
  const gis::KalmanPrior prior({1.0, 1.0, gis::Vec(4, 0.0)});
  gis::Rng rng(3);
  std::vector<double> sum2(4, 0.0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto x = prior.sample(rng);
    for (std::size_t k = 0; k < 4; ++k) sum2[k] += x[k] * x[k];
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const double var = static_cast<double>(k + 1);
    // Standard error of a Gaussian second moment is var * sqrt(2 / n).
    EXPECT_NEAR(sum2[k] / n, var, 4 * var * std::sqrt(2.0 / n)) << k;
  }
}

TEST(KalmanDensities, GradientsMatchFiniteDifferences) {
  const gis::KalmanModel model{0.8, 1.2, {0.5, -0.3, 1.0}};
  const gis::KalmanPrior prior(model);
  const gis::KalmanPosterior post(model);
  const std::vector<double> x{0.2, 0.7, -0.4};
  for (const gis::Distribution* d : {static_cast<const gis::Distribution*>(&prior),
                                     static_cast<const gis::Distribution*>(&post)}) {
    std::vector<double> g(3);
    d->grad_log(x, g);
    for (std::size_t k = 0; k < 3; ++k) {
      const double h = 1e-5;
      auto up = x;
      auto down = x;
      up[k] += h;
      down[k] -= h;
      EXPECT_NEAR(g[k], (d->log_mass(up) - d->log_mass(down)) / (2 * h), 1e-7);
    }
  }
}

TEST(KalmanProblem, IndirectWeightIsObservationLikelihood) {
  const gis::KalmanModel model{1.0, 0.7, {0.5, -0.3}};
  const auto problem = gis::make_kalman_problem(model);
  const std::vector<double> a{0.1, 0.4};
  const std::vector<double> b{-1.0, 2.0};
  const auto log_u = [&](const std::vector<double>& x) {
    return problem.target->log_mass(x) - problem.proposal->log_mass(x);
  };
  const auto log_lik = [&](const std::vector<double>& x) {
    return log_normal_pdf(0.5, x[0], 0.49) + log_normal_pdf(-0.3, x[1], 0.49);
  };
  EXPECT_NEAR(log_u(a) - log_u(b), log_lik(a) - log_lik(b), 1e-12);
  EXPECT_EQ(problem.f(b), 2.0);
}

TEST(KalmanSimulation, ShapeAndReproducibility) {
  gis::Rng a(4);
  gis::Rng b(4);
  const auto m1 = gis::simulate_kalman(1.0, 2.0, 7, a);
  const auto m2 = gis::simulate_kalman(1.0, 2.0, 7, b);
  EXPECT_EQ(m1.steps(), 7u);
  EXPECT_EQ(m1.observations, m2.observations);
}

TEST(ParticleFilter, ConvergesToExactPosterior) {
  const gis::KalmanModel model{1.0, 1.0, gis::kalman_catalog_observations()};
  const double truth = gis::kalman_posterior(model).mean;
  double small = 0.0;
  double large = 0.0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    gis::Rng a = gis::stream_for(5, r);
    gis::Rng b = gis::stream_for(6, r);
    small += std::abs(gis::particle_filter_estimate(model, 1000, a) - truth);
    large += std::abs(gis::particle_filter_estimate(model, 100000, b) - truth);
  }
  // Monte Carlo error scales as 1/sqrt(N): a hundredfold budget cuts it about tenfold.
  EXPECT_LT(3 * large, small);
}

TEST(ParticleFilter, UninformativeObservationsGivePrior) {
  // With a huge observation noise the filter simulates the prior, whose final mean is 0 and variance t.
  const gis::KalmanModel model{1.0, 1e8, {5.0, 5.0, 5.0, 5.0}};
  gis::Rng rng(7);
  const double mean = gis::particle_filter_estimate(model, 200000, rng);
  EXPECT_NEAR(mean, 0.0, 4 * std::sqrt(4.0 / 200000));
  gis::Rng again(8);
  const double second = gis::particle_filter_estimate(model, 200000, again, [](double x) { return x * x; });
  EXPECT_NEAR(second, 4.0, 4 * 4.0 * std::sqrt(2.0 / 200000));
}

TEST(ParticleFilter, Errors) {
  gis::Rng rng(1);
  EXPECT_THROW(gis::particle_filter_estimate({1.0, 1.0, {1.0}}, 0, rng), std::invalid_argument);
  EXPECT_THROW(gis::particle_filter_estimate({1.0, 1.0, {1e300}}, 10, rng), std::domain_error);
}

TEST(GisDynamic, SingleStepIsOneDimensionalGis) {
  const gis::KalmanModel model{1.0, 1.0, {0.8}};
  const gis::Problem conjugate{gis::make_gaussian(gis::Vec{0.4}, 0.5), gis::make_gaussian(1, 0.0, 1.0),
                               gis::Objective::coordinate(0)};
  const gis::SearchConfig cfg{2.0, 5, 0.4};
  for (int r = 0; r < 20; ++r) {
    gis::Rng a = gis::stream_for(9, r);
    gis::Rng b = gis::stream_for(9, r);
    const double dynamic = gis::gis_dynamic_estimate(model, cfg, 50, a);
    const double direct = gis::gis_estimate(conjugate, cfg, 50, b, gis::WeightMode::Indirect).estimate;
    EXPECT_NEAR(dynamic, direct, 1e-12) << r;
  }
}

TEST(GisDynamic, SymmetricModelIsCentered) {
  const gis::KalmanModel model{1.0, 1.0, gis::Vec(6, 0.0)};
  const auto cfg = gis::make_scenario("table6").defaults.search;
  double sum = 0.0;
  double sum2 = 0.0;
  const int reps = 300;
  for (int r = 0; r < reps; ++r) {
    gis::Rng rng = gis::stream_for(10, r);
    const double e = gis::gis_dynamic_estimate(model, cfg, 50, rng);
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  EXPECT_LT(std::abs(mean), 4 * se);
}

}  // namespace
